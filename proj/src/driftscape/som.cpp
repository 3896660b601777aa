#include "driftscape/som.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "driftscape/error.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

namespace {

// Neighborhood factors below exp(-34) ~ 1.7e-15 are sub-ulp on unit-scale
// codebooks; skipping them keeps the update loop near the winner once sigma
// has shrunk.
constexpr double kMinLogInfluence = -34.0;

std::size_t best_matching_unit(const Matrix& codebooks, std::span<const float> x,
                               double* best_distance_sq = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < codebooks.rows; ++u) {
    const double d = squared_distance(x, codebooks.row(u));
    if (d < best_d) {
      best_d = d;
      best = u;
    }
  }
  if (best_distance_sq) *best_distance_sq = best_d;
  return best;
}

}  // namespace

SomModel som_fit(const FloatWindow& window, std::size_t rows, std::size_t cols,
                 SomParams params, std::uint64_t seed,
                 std::vector<double>* epoch_quantization_error) {
  if (window.count == 0) {
    raise(ErrorCode::EmptyWindow, "som_fit: empty training window");
  }
  if (rows < 2 || cols < 2) {
    raise(ErrorCode::ConfigInvalid, "som_fit: grid must be at least 2x2");
  }
  if (params.sigma0 <= 0.0) {
    params.sigma0 = static_cast<double>(std::max(rows, cols)) / 2.0;
  }

  SomModel model;
  model.rows = rows;
  model.cols = cols;
  model.dim = window.dim;
  model.params = params;
  model.codebooks = Matrix(rows * cols, window.dim);

  Rng rng(seed);
  for (std::size_t u = 0; u < model.units(); ++u) {
    const auto src = window.sample(rng.below(window.count));
    auto dst = model.codebooks.row(u);
    for (std::size_t f = 0; f < window.dim; ++f) dst[f] = src[f];
  }

  const std::size_t total_steps = params.epochs * window.count;
  if (total_steps == 0) return model;
  const double inv_total = 1.0 / static_cast<double>(total_steps);

  std::vector<std::size_t> order(window.count);
  std::iota(order.begin(), order.end(), std::size_t{0});

  if (epoch_quantization_error) epoch_quantization_error->clear();

  std::size_t step = 0;
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_error = 0.0;
    for (std::size_t sample_index : order) {
      const auto x = window.sample(sample_index);
      const double decay = 1.0 - static_cast<double>(step) * inv_total;
      const double alpha = params.alpha0 * decay;
      const double sigma = std::max(params.sigma_min, params.sigma0 * decay);
      const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);

      double bmu_d_sq = 0.0;
      const std::size_t bmu = best_matching_unit(model.codebooks, x, &bmu_d_sq);
      epoch_error += std::sqrt(bmu_d_sq);

      const double brow = static_cast<double>(bmu / cols);
      const double bcol = static_cast<double>(bmu % cols);
      for (std::size_t u = 0; u < model.units(); ++u) {
        const double dr = static_cast<double>(u / cols) - brow;
        const double dc = static_cast<double>(u % cols) - bcol;
        const double log_h = -(dr * dr + dc * dc) * inv_two_sigma_sq;
        if (log_h < kMinLogInfluence) continue;
        const double f = alpha * std::exp(log_h);
        auto w = model.codebooks.row(u);
        for (std::size_t k = 0; k < window.dim; ++k) {
          w[k] += f * (static_cast<double>(x[k]) - w[k]);
        }
      }
      ++step;
    }
    if (epoch_quantization_error) {
      epoch_quantization_error->push_back(epoch_error /
                                          static_cast<double>(window.count));
    }
  }
  return model;
}

std::size_t som_bmu(const SomModel& model, std::span<const float> x) {
  if (x.size() != model.dim) {
    raise(ErrorCode::DimensionMismatch, "som_bmu: input dimension mismatch");
  }
  return best_matching_unit(model.codebooks, x);
}

double som_quantization_error(const SomModel& model, const FloatWindow& window) {
  double total = 0.0;
  for (std::size_t i = 0; i < window.count; ++i) {
    double d_sq = 0.0;
    best_matching_unit(model.codebooks, window.sample(i), &d_sq);
    total += std::sqrt(d_sq);
  }
  return window.count ? total / static_cast<double>(window.count) : 0.0;
}

}  // namespace driftscape
