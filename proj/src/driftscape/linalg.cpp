#include "driftscape/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftscape/error.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

double squared_distance(std::span<const float> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - y[i];
    s += d * d;
  }
  return s;
}

double squared_distance(std::span<const float> x, std::span<const float> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = static_cast<double>(x[i]) - static_cast<double>(y[i]);
    s += d * d;
  }
  return s;
}

bool all_finite(std::span<const double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

namespace {

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return std::sqrt(s);
}

double max_off_diagonal(const Matrix& a) {
  double m = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows; ++p) {
    for (std::size_t q = p + 1; q < a.cols; ++q) {
      m = std::max(m, std::abs(a(p, q)));
    }
  }
  return m;
}

EigenDecomposition sorted_descending(std::vector<double> values, Matrix vectors) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
  EigenDecomposition out;
  out.values.reserve(values.size());
  out.vectors = Matrix(vectors.rows, vectors.cols);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values.push_back(values[order[i]]);
    auto src = vectors.row(order[i]);
    auto dst = out.vectors.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

}  // namespace

EigenDecomposition jacobi_eigen_symmetric(const Matrix& input, double rel_tol,
                                          int max_sweeps) {
  if (input.rows != input.cols) {
    raise(ErrorCode::DimensionMismatch, "jacobi: matrix must be square");
  }
  const std::size_t n = input.rows;
  Matrix a = input;
  // Eigenvector accumulator kept transposed: row i collects eigenvector i,
  // so every rotation touches two contiguous rows.
  Matrix w(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) w(i, i) = 1.0;

  const double tol = rel_tol * frobenius_norm(a);
  if (tol == 0.0) {
    std::vector<double> values(n, 0.0);
    return sorted_descending(std::move(values), std::move(w));
  }
  const double skip = 0.01 * tol;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (max_off_diagonal(a) < tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= skip) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        double* rp = a.data.data() + p * n;
        double* rq = a.data.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double apk = rp[k];
          const double aqk = rq[k];
          rp[k] = c * apk - s * aqk;
          rq[k] = s * apk + c * aqk;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        // Mirror updated rows into the columns to keep A symmetric.
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = rp[k];
          a(k, q) = rq[k];
        }

        double* wp = w.data.data() + p * n;
        double* wq = w.data.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const double vp = wp[k];
          const double vq = wq[k];
          wp[k] = c * vp - s * vq;
          wq[k] = s * vp + c * vq;
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  return sorted_descending(std::move(values), std::move(w));
}

namespace {

// Modified Gram-Schmidt on the columns of x (n x b), two passes.
void orthonormalize_columns(Matrix& x, Rng& rng) {
  const std::size_t n = x.rows;
  const std::size_t b = x.cols;
  for (std::size_t j = 0; j < b; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        double proj = 0.0;
        for (std::size_t r = 0; r < n; ++r) proj += x(r, i) * x(r, j);
        for (std::size_t r = 0; r < n; ++r) x(r, j) -= proj * x(r, i);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += x(r, j) * x(r, j);
    norm = std::sqrt(norm);
    if (norm < 1e-300) {
      // Degenerate column; replace with fresh random directions and redo.
      for (std::size_t r = 0; r < n; ++r) x(r, j) = rng.unit() - 0.5;
      --j;
      continue;
    }
    for (std::size_t r = 0; r < n; ++r) x(r, j) /= norm;
  }
}

}  // namespace

EigenDecomposition topk_eigen_symmetric(const Matrix& a, std::size_t k,
                                        std::uint64_t seed, double rel_tol,
                                        int max_iters) {
  if (a.rows != a.cols) {
    raise(ErrorCode::DimensionMismatch, "topk: matrix must be square");
  }
  const std::size_t n = a.rows;
  k = std::min(k, n);
  if (k == 0) return {};

  const std::size_t block = std::min(n, k + std::min<std::size_t>(k, 8) + 2);
  const double fro = frobenius_norm(a);
  const double tol = rel_tol * std::max(fro, 1e-300);

  Rng rng(seed);
  Matrix x(n, block);
  for (double& v : x.data) v = rng.unit() - 0.5;
  orthonormalize_columns(x, rng);

  Matrix y(n, block);
  std::vector<double> lambda(block, 0.0);
  Matrix z(n, block);   // Ritz vectors
  Matrix az(n, block);  // A * Ritz vectors

  for (int iter = 0; iter < max_iters; ++iter) {
    // y = A x
    for (std::size_t r = 0; r < n; ++r) {
      const double* arow = a.data.data() + r * n;
      double* yrow = y.data.data() + r * block;
      std::fill(yrow, yrow + block, 0.0);
      for (std::size_t c = 0; c < n; ++c) {
        const double av = arow[c];
        const double* xrow = x.data.data() + c * block;
        for (std::size_t j = 0; j < block; ++j) yrow[j] += av * xrow[j];
      }
    }

    // Rayleigh-Ritz on the current basis: r = x^T y (block x block, symmetric).
    Matrix r(block, block);
    for (std::size_t i = 0; i < block; ++i) {
      for (std::size_t j = i; j < block; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += x(t, i) * y(t, j);
        r(i, j) = s;
        r(j, i) = s;
      }
    }
    EigenDecomposition small = jacobi_eigen_symmetric(r, 1e-14, 64);

    // Rotate basis and image: z = x * S, az = y * S, with S columns taken from
    // the small problem's eigenvectors.
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < block; ++j) {
        double zs = 0.0;
        double as = 0.0;
        auto ev = small.vectors.row(j);
        for (std::size_t m = 0; m < block; ++m) {
          zs += x(t, m) * ev[m];
          as += y(t, m) * ev[m];
        }
        z(t, j) = zs;
        az(t, j) = as;
      }
    }
    lambda = small.values;

    // Residual check on the leading k pairs: ||A z - lambda z||.
    bool converged = true;
    for (std::size_t j = 0; j < k && converged; ++j) {
      double res = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double d = az(t, j) - lambda[j] * z(t, j);
        res += d * d;
      }
      if (std::sqrt(res) > tol) converged = false;
    }

    if (converged || iter + 1 == max_iters) break;

    // Next basis from the rotated image (one multiply per iteration).
    x = az;
    orthonormalize_columns(x, rng);
  }

  EigenDecomposition out;
  out.values.assign(lambda.begin(), lambda.begin() + k);
  out.vectors = Matrix(k, n);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t t = 0; t < n; ++t) out.vectors(j, t) = z(t, j);
  }
  return out;
}

}  // namespace driftscape
