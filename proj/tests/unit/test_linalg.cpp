#include <doctest.h>

#include <cmath>

#include "common/oracles.hpp"
#include "driftscape/linalg.hpp"
#include "driftscape/rng.hpp"

using namespace driftscape;

namespace {

Matrix random_symmetric(std::size_t n, Rng& rng) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = 2.0 * rng.unit() - 1.0;
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("jacobi diagonal matrix is already solved") {
  Matrix a(3, 3, 0.0);
  a(0, 0) = 5.0;
  a(1, 1) = -2.0;
  a(2, 2) = 1.0;
  const EigenDecomposition e = jacobi_eigen_symmetric(a);
  CHECK(e.values[0] == doctest::Approx(5.0));
  CHECK(e.values[1] == doctest::Approx(1.0));
  CHECK(e.values[2] == doctest::Approx(-2.0));
}

TEST_CASE("jacobi matches characteristic-polynomial roots on random 5x5") {
  Rng rng(20240517);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random_symmetric(5, rng);
    const EigenDecomposition e = jacobi_eigen_symmetric(a);
    const std::vector<double> roots = oracles::charpoly_eigenvalues(a);
    REQUIRE(roots.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(e.values[i] - roots[i]) < 1e-8);
    }
  }
}

TEST_CASE("jacobi eigenvectors satisfy A v = lambda v and are orthonormal") {
  Rng rng(7);
  const Matrix a = random_symmetric(8, rng);
  const EigenDecomposition e = jacobi_eigen_symmetric(a);
  for (std::size_t k = 0; k < 8; ++k) {
    const auto v = e.vectors.row(k);
    for (std::size_t i = 0; i < 8; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < 8; ++j) av += a(i, j) * v[j];
      CHECK(std::abs(av - e.values[k] * v[i]) < 1e-9);
    }
    for (std::size_t m = 0; m <= k; ++m) {
      const double d = dot(v, e.vectors.row(m));
      CHECK(std::abs(d - (m == k ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("subspace iteration reproduces the leading jacobi eigenpairs") {
  Rng rng(99);
  Matrix a = random_symmetric(40, rng);
  // Make it positive semi-definite-ish to mimic a Gram matrix: a <- a^T a.
  Matrix psd(40, 40, 0.0);
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = 0; j < 40; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < 40; ++t) s += a(t, i) * a(t, j);
      psd(i, j) = s;
    }
  }
  const EigenDecomposition full = jacobi_eigen_symmetric(psd);
  const EigenDecomposition top = topk_eigen_symmetric(psd, 3, 1234);
  REQUIRE(top.values.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(top.values[k] - full.values[k]) < 1e-8 * full.values[0]);
    // Eigenvectors match up to sign.
    const double overlap = std::abs(dot(top.vectors.row(k), full.vectors.row(k)));
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-6));
  }
}
