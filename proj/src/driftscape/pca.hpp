#pragma once

#include <cstddef>
#include <vector>

#include "driftscape/linalg.hpp"
#include "driftscape/window.hpp"

namespace driftscape {

struct PcaModel {
  std::vector<double> mean;       // input-space mean of the training window
  Matrix components;              // d x dim, rows orthonormal
  std::vector<double> eigenvalues;  // descending, >= 0
};

// Mean-centered covariance (1/(n-1) normalization) diagonalized with the
// cyclic Jacobi solver; the top d eigenpairs are kept and each component's
// sign is fixed so its largest-magnitude coordinate is positive.
PcaModel pca_fit(const FloatWindow& window, std::size_t d);

/// components^T (x - mean).
std::vector<double> pca_project(const PcaModel& model, std::span<const float> x);

// Flips rows of a component matrix in place so the largest-magnitude entry of
// each row is positive (first index wins on magnitude ties). Shared with the
// kernel-PCA fit for deterministic eigenvector orientation.
void orient_components(Matrix& components);

}  // namespace driftscape
