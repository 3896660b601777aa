#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "driftscape/linalg.hpp"
#include "driftscape/window.hpp"

namespace driftscape {

struct SomParams {
  double alpha0 = 0.5;     // initial learning rate
  double sigma0 = 0.0;     // initial neighborhood radius; 0 -> max(rows, cols)/2
  double sigma_min = 0.5;  // radius floor
  std::size_t epochs = 10;
};

// Rectangular SOM lattice; codebook u sits at grid position
// (u / cols, u % cols).
struct SomModel {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t dim = 0;
  Matrix codebooks;  // units x dim
  SomParams params;

  std::size_t units() const { return rows * cols; }
  std::array<double, 2> position(std::size_t unit) const {
    return {static_cast<double>(unit / cols), static_cast<double>(unit % cols)};
  }
};

// Classic online training: codebooks start at random window samples, then for
// each shuffled sample the best-matching unit c = argmin ||x - w|| (ties to
// the lowest unit index) pulls every unit toward x with strength
// alpha(t) * exp(-||pos_u - pos_c||^2 / (2 sigma(t)^2)), where alpha and sigma
// decay linearly over the T = epochs * window steps and sigma is floored at
// sigma_min. Deterministic given the seed.
SomModel som_fit(const FloatWindow& window, std::size_t rows, std::size_t cols,
                 SomParams params, std::uint64_t seed,
                 std::vector<double>* epoch_quantization_error = nullptr);

/// Index of the best-matching unit for x (ties to the lowest unit index).
std::size_t som_bmu(const SomModel& model, std::span<const float> x);

/// Mean Euclidean distance from each window sample to its BMU.
double som_quantization_error(const SomModel& model, const FloatWindow& window);

}  // namespace driftscape
