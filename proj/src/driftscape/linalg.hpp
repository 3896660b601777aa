#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace driftscape {

// Dense row-major matrix of doubles.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const {
    return {data.data() + r * cols, cols};
  }

  bool operator==(const Matrix& other) const = default;
};

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix vectors;              // row i is the eigenvector paired with values[i]
};

// Full spectrum of a symmetric matrix via cyclic Jacobi rotations. Sweeps stop
// once every off-diagonal magnitude is below rel_tol * ||A||_F (the Frobenius
// norm is rotation-invariant, so it is computed once up front).
EigenDecomposition jacobi_eigen_symmetric(const Matrix& a, double rel_tol = 1e-12,
                                          int max_sweeps = 64);

// Leading k eigenpairs of a symmetric matrix by seeded block subspace
// iteration with Rayleigh-Ritz extraction; the small projected problem is
// solved with the Jacobi kernel above. Intended for matrices too large to
// diagonalize fully.
EigenDecomposition topk_eigen_symmetric(const Matrix& a, std::size_t k,
                                        std::uint64_t seed, double rel_tol = 1e-10,
                                        int max_iters = 2000);

double dot(std::span<const double> x, std::span<const double> y);
double squared_distance(std::span<const double> x, std::span<const double> y);
double squared_distance(std::span<const float> x, std::span<const double> y);
double squared_distance(std::span<const float> x, std::span<const float> y);
bool all_finite(std::span<const double> xs);

}  // namespace driftscape
