#pragma once

#include <cstdint>
#include <vector>

#include "driftscape/linalg.hpp"
#include "driftscape/window.hpp"

namespace driftscape {

struct KpcaModel {
  Matrix train;               // retained training points (n x dim)
  double gamma = 0.0;         // RBF bandwidth
  Matrix alphas;              // d x n, eigenvector columns scaled by 1/sqrt(lambda)
  std::vector<double> row_means;  // per-row means of the uncentered Gram matrix
  double grand_mean = 0.0;
  std::vector<double> eigenvalues;  // top-d positive eigenvalues, descending
  Matrix training_latents;    // n x d embedding of the training points
};

// Bandwidth heuristic when none is given: 1 / (dim * mean per-feature
// variance), which puts the average kernel exponent near -2 regardless of
// scale.
double kpca_default_gamma(const FloatWindow& window);

// RBF kernel PCA. The Gram matrix K_ij = exp(-gamma ||x_i - x_j||^2) is
// double-centered; the leading d positive eigenpairs give coefficient rows
// alpha_c = v_c / sqrt(lambda_c) so the feature-space axes have unit norm.
// subsample_cap > 0 limits the retained training points (seeded draw without
// replacement, order preserved).
KpcaModel kpca_fit(const FloatWindow& window, std::size_t d, double gamma,
                   std::uint64_t seed, std::size_t subsample_cap = 0);

/// Centered kernel-vector projection of a new point, dimension d.
std::vector<double> kpca_project(const KpcaModel& model, std::span<const float> x);

}  // namespace driftscape
