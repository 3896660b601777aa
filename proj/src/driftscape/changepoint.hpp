#pragma once

#include <span>
#include <string>
#include <vector>

namespace driftscape {

struct Segmentation {
  std::vector<std::size_t> breakpoints;  // strictly inside (0, n), ascending
  double penalty = 0.0;
  double objective = 0.0;  // sum of segment costs + penalty * breakpoints
};

// Exact penalized change-point detection with piecewise-constant-mean L2 cost
// C(i..j) = sum y^2 - (sum y)^2 / len, evaluated in O(1) from prefix sums.
// Candidates are pruned with the standard PELT condition
// F(t) + C(t..s) <= F(s) (pruning constant 0 for this cost), which preserves
// the optimum of the unpruned dynamic program.
Segmentation pelt(std::span<const double> series, double penalty);

// Data-driven default 2 * sigma^2 * ln(n) with sigma estimated robustly from
// the median absolute first difference; falls back to half the variance of
// the differences when more than half of them are zero, and to a tiny
// positive floor for constant series.
double pelt_default_penalty(std::span<const double> series);

/// Segment id (0-based) per index, derived from the breakpoints.
std::vector<std::size_t> segment_ids(std::size_t n,
                                     std::span<const std::size_t> breakpoints);

struct MeanDistanceSeries {
  std::vector<double> values;  // one mean centroid distance per chunk
};

MeanDistanceSeries read_means_csv(const std::string& path);
void write_pelt_csv(const std::string& path, const MeanDistanceSeries& series,
                    const Segmentation& segmentation);

}  // namespace driftscape
