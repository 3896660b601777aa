#include "driftscape/kmeans.hpp"

#include <algorithm>
#include <limits>

#include "driftscape/error.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

namespace {

constexpr std::size_t kMaxIterations = 300;

std::size_t nearest_centroid(const Matrix& centroids, std::span<const double> x,
                             double* distance_sq = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows; ++c) {
    const double d = squared_distance(x, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (distance_sq) *distance_sq = best_d;
  return best;
}

}  // namespace

CentroidSet kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::vector<double>* objective_trace) {
  const std::size_t n = points.rows;
  const std::size_t dim = points.cols;
  if (k < 1 || n < k) {
    raise(ErrorCode::TooFewPoints,
          "kmeans_fit: need points >= k >= 1 (points " + std::to_string(n) +
              ", k " + std::to_string(k) + ")");
  }

  Rng rng(seed);
  CentroidSet set;
  set.centroids = Matrix(k, dim);

  // k-means++ seeding.
  std::vector<double> nearest_sq(n, std::numeric_limits<double>::infinity());
  {
    const std::size_t first = rng.below(n);
    auto dst = set.centroids.row(0);
    auto src = points.row(first);
    std::copy(src.begin(), src.end(), dst.begin());
    for (std::size_t c = 1; c < k; ++c) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = squared_distance(points.row(i), set.centroids.row(c - 1));
        nearest_sq[i] = std::min(nearest_sq[i], d);
        total += nearest_sq[i];
      }
      std::size_t chosen;
      if (total > 0.0) {
        const double target = rng.unit() * total;
        double acc = 0.0;
        chosen = n - 1;
        for (std::size_t i = 0; i < n; ++i) {
          acc += nearest_sq[i];
          if (acc >= target) {
            chosen = i;
            break;
          }
        }
      } else {
        chosen = rng.below(n);  // all points already covered exactly
      }
      auto cdst = set.centroids.row(c);
      auto csrc = points.row(chosen);
      std::copy(csrc.begin(), csrc.end(), cdst.begin());
    }
  }

  std::vector<std::size_t> assignment(n, 0);
  std::vector<std::size_t> counts(k, 0);
  if (objective_trace) objective_trace->clear();

  for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d_sq = 0.0;
      const std::size_t c = nearest_centroid(set.centroids, points.row(i), &d_sq);
      objective += d_sq;
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (objective_trace) objective_trace->push_back(objective);
    if (!changed && iter > 0) break;

    std::fill(counts.begin(), counts.end(), std::size_t{0});
    std::fill(set.centroids.data.begin(), set.centroids.data.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = set.centroids.row(assignment[i]);
      const auto p = points.row(i);
      for (std::size_t f = 0; f < dim; ++f) c[f] += p[f];
      ++counts[assignment[i]];
    }
    std::vector<bool> claimed(n, false);
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        auto row = set.centroids.row(c);
        for (double& v : row) v /= static_cast<double>(counts[c]);
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      // Re-seed an empty cluster to the point farthest from its centroid.
      std::size_t farthest = 0;
      double farthest_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (claimed[i] || counts[assignment[i]] == 0) continue;
        const double d = squared_distance(points.row(i), set.centroids.row(assignment[i]));
        if (d > farthest_d) {
          farthest_d = d;
          farthest = i;
        }
      }
      claimed[farthest] = true;
      auto dst = set.centroids.row(c);
      const auto src = points.row(farthest);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
  return set;
}

}  // namespace driftscape
