#include "driftscape/kpca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftscape/error.hpp"
#include "driftscape/pca.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

namespace {

// Full Jacobi diagonalization is quadratic per sweep in matrix entries; above
// this size the seeded subspace iteration extracts the leading pairs instead.
constexpr std::size_t kFullEigenLimit = 256;

}  // namespace

double kpca_default_gamma(const FloatWindow& window) {
  if (window.count == 0 || window.dim == 0) return 1.0;
  const double n = static_cast<double>(window.count);
  double variance_sum = 0.0;
  std::vector<double> mean(window.dim, 0.0);
  for (std::size_t i = 0; i < window.count; ++i) {
    const auto x = window.sample(i);
    for (std::size_t f = 0; f < window.dim; ++f) mean[f] += x[f];
  }
  for (double& m : mean) m /= n;
  for (std::size_t i = 0; i < window.count; ++i) {
    const auto x = window.sample(i);
    for (std::size_t f = 0; f < window.dim; ++f) {
      const double d = static_cast<double>(x[f]) - mean[f];
      variance_sum += d * d;
    }
  }
  const double mean_feature_variance = variance_sum / (n * static_cast<double>(window.dim));
  if (mean_feature_variance <= 0.0) return 1.0;
  return 1.0 / (static_cast<double>(window.dim) * mean_feature_variance);
}

KpcaModel kpca_fit(const FloatWindow& window, std::size_t d, double gamma,
                   std::uint64_t seed, std::size_t subsample_cap) {
  if (d < 1 || window.count <= d) {
    raise(ErrorCode::ConfigInvalid,
          "kpca_fit: need window.count > d >= 1 (count " +
              std::to_string(window.count) + ", d " + std::to_string(d) + ")");
  }
  if (gamma <= 0.0) gamma = kpca_default_gamma(window);

  // Retained training points, optionally a seeded subsample.
  std::vector<std::size_t> keep(window.count);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  if (subsample_cap > 0 && subsample_cap < window.count) {
    if (subsample_cap <= d) {
      raise(ErrorCode::ConfigInvalid, "kpca_fit: subsample cap must exceed d");
    }
    Rng rng(mix_seed(seed, "kpca-subsample"));
    rng.shuffle(keep);
    keep.resize(subsample_cap);
    std::sort(keep.begin(), keep.end());
  }
  const std::size_t n = keep.size();

  KpcaModel model;
  model.gamma = gamma;
  model.train = Matrix(n, window.dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = window.sample(keep[i]);
    auto dst = model.train.row(i);
    for (std::size_t f = 0; f < window.dim; ++f) dst[f] = x[f];
  }

  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    gram(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k =
          std::exp(-gamma * squared_distance(model.train.row(i), model.train.row(j)));
      gram(i, j) = k;
      gram(j, i) = k;
    }
  }

  model.row_means.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += gram(i, j);
    model.row_means[i] = s / static_cast<double>(n);
  }
  model.grand_mean = 0.0;
  for (double rm : model.row_means) model.grand_mean += rm;
  model.grand_mean /= static_cast<double>(n);

  // Double centering in place: K' = K - 1K - K1 + 1K1.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      gram(i, j) += model.grand_mean - model.row_means[i] - model.row_means[j];
    }
  }

  EigenDecomposition eigen =
      (n <= kFullEigenLimit)
          ? jacobi_eigen_symmetric(gram)
          : topk_eigen_symmetric(gram, d, mix_seed(seed, "kpca-eigen"));

  const double lambda_max = eigen.values.empty() ? 0.0 : eigen.values.front();
  if (lambda_max <= 0.0) {
    raise(ErrorCode::RankDeficient, "kpca_fit: centered Gram matrix has no positive spectrum");
  }
  const double positive_floor = 1e-9 * lambda_max;
  std::size_t positive = 0;
  while (positive < eigen.values.size() && eigen.values[positive] > positive_floor) {
    ++positive;
  }
  if (positive < d) {
    raise(ErrorCode::RankDeficient,
          "kpca_fit: only " + std::to_string(positive) +
              " positive eigenvalues, need " + std::to_string(d));
  }

  Matrix vectors(d, n);
  for (std::size_t c = 0; c < d; ++c) {
    auto src = eigen.vectors.row(c);
    auto dst = vectors.row(c);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  orient_components(vectors);

  model.eigenvalues.assign(eigen.values.begin(), eigen.values.begin() + d);
  model.alphas = Matrix(d, n);
  model.training_latents = Matrix(n, d);
  for (std::size_t c = 0; c < d; ++c) {
    const double sqrt_lambda = std::sqrt(model.eigenvalues[c]);
    for (std::size_t i = 0; i < n; ++i) {
      model.alphas(c, i) = vectors(c, i) / sqrt_lambda;
      model.training_latents(i, c) = sqrt_lambda * vectors(c, i);
    }
  }
  return model;
}

std::vector<double> kpca_project(const KpcaModel& model, std::span<const float> x) {
  const std::size_t n = model.train.rows;
  if (x.size() != model.train.cols) {
    raise(ErrorCode::DimensionMismatch, "kpca_project: input dimension mismatch");
  }
  std::vector<double> kx(n);
  double kx_mean = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    kx[j] = std::exp(-model.gamma * squared_distance(x, model.train.row(j)));
    kx_mean += kx[j];
  }
  kx_mean /= static_cast<double>(n);

  std::vector<double> out(model.alphas.rows, 0.0);
  for (std::size_t c = 0; c < model.alphas.rows; ++c) {
    const auto alpha = model.alphas.row(c);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double centered = kx[j] - kx_mean - model.row_means[j] + model.grand_mean;
      s += alpha[j] * centered;
    }
    out[c] = s;
  }
  return out;
}

}  // namespace driftscape
