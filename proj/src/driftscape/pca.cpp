#include "driftscape/pca.hpp"

#include <cmath>

#include "driftscape/error.hpp"

namespace driftscape {

void orient_components(Matrix& components) {
  for (std::size_t r = 0; r < components.rows; ++r) {
    auto row = components.row(r);
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double mag = std::abs(row[i]);
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (row[arg] < 0.0) {
      for (double& v : row) v = -v;
    }
  }
}

PcaModel pca_fit(const FloatWindow& window, std::size_t d) {
  if (d < 1 || window.count <= d) {
    raise(ErrorCode::ConfigInvalid,
          "pca_fit: need window.count > d >= 1 (count " +
              std::to_string(window.count) + ", d " + std::to_string(d) + ")");
  }
  const std::size_t n = window.count;
  const std::size_t dim = window.dim;

  PcaModel model;
  model.mean.assign(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = window.sample(i);
    for (std::size_t f = 0; f < dim; ++f) model.mean[f] += x[f];
  }
  for (double& m : model.mean) m /= static_cast<double>(n);

  // Upper-triangle accumulation of the sample covariance.
  Matrix cov(dim, dim, 0.0);
  std::vector<double> centered(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = window.sample(i);
    for (std::size_t f = 0; f < dim; ++f) {
      centered[f] = static_cast<double>(x[f]) - model.mean[f];
    }
    for (std::size_t r = 0; r < dim; ++r) {
      const double cr = centered[r];
      if (cr == 0.0) continue;
      double* row = cov.data.data() + r * dim;
      for (std::size_t c = r; c < dim; ++c) row[c] += cr * centered[c];
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  double frobenius_sq = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = r; c < dim; ++c) {
      const double v = cov(r, c) * scale;
      cov(r, c) = v;
      cov(c, r) = v;
      frobenius_sq += (r == c) ? v * v : 2.0 * v * v;
    }
  }
  // Scale-aware zero test: identical samples leave only mean-rounding residue
  // in the covariance, many orders below any real variance.
  double mean_sq = 0.0;
  for (double m : model.mean) mean_sq += m * m;
  if (std::sqrt(frobenius_sq) <= 1e-20 * std::max(1.0, mean_sq)) {
    raise(ErrorCode::DegenerateWindow, "pca_fit: window has zero variance");
  }

  EigenDecomposition eigen = jacobi_eigen_symmetric(cov);
  model.eigenvalues.assign(eigen.values.begin(), eigen.values.begin() + d);
  model.components = Matrix(d, dim);
  for (std::size_t r = 0; r < d; ++r) {
    auto src = eigen.vectors.row(r);
    auto dst = model.components.row(r);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  orient_components(model.components);
  return model;
}

std::vector<double> pca_project(const PcaModel& model, std::span<const float> x) {
  if (x.size() != model.mean.size()) {
    raise(ErrorCode::DimensionMismatch, "pca_project: input dimension mismatch");
  }
  std::vector<double> out(model.components.rows, 0.0);
  for (std::size_t r = 0; r < model.components.rows; ++r) {
    const auto comp = model.components.row(r);
    double s = 0.0;
    for (std::size_t f = 0; f < comp.size(); ++f) {
      s += comp[f] * (static_cast<double>(x[f]) - model.mean[f]);
    }
    out[r] = s;
  }
  return out;
}

}  // namespace driftscape
