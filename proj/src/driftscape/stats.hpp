#pragma once

#include <span>
#include <vector>

#include "driftscape/streamgen.hpp"
#include "driftscape/topology.hpp"

namespace driftscape {

struct RankResult {
  std::vector<double> ranks;          // 1..n with midranks for ties
  std::vector<std::size_t> tie_sizes; // sizes of tie groups with >= 2 members
};

/// Average ranks of the pooled sample, plus tie-group sizes for the variance
/// correction.
RankResult rank_with_ties(std::span<const double> pooled);

struct MannWhitneyResult {
  double u = 0.0;
  double p = 1.0;
};

// Two-sided Mann-Whitney U via the normal approximation:
//   U = R_a - n_a(n_a+1)/2 on the pooled midranks,
//   sigma^2 = (n_a n_b / 12) * [(n+1) - sum(t^3 - t) / (n(n-1))],
//   z = (U - n_a n_b / 2 -+ 0.5) / sigma  (continuity correction toward 0),
//   p = 2 Phi(-|z|), clipped to [0, 1]; all-tied pools give p = 1.
MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b);

/// Standard normal CDF.
double normal_cdf(double x);

struct PValueRecord {
  std::size_t chunk_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  double u_statistic = 0.0;
  double p_value = 1.0;
  bool flag_05 = false;
  bool flag_10 = false;
  bool boundary_inside = false;  // annotation overlap, evaluation only
};

enum class ComparisonMode {
  Consecutive,     // chunk i vs chunk i-1
  FixedReference,  // chunk i vs chunk 0
};

PValueRecord make_record(const PeVector& reference, const PeVector& current,
                         const Chunk& chunk, double threshold_low,
                         double threshold_high);

/// Pairs each chunk's PE vector with its reference and flags the p-values.
/// pe and chunks must be index-aligned; record i exists for every i >= 1.
std::vector<PValueRecord> monitor(std::span<const PeVector> pe,
                                  std::span<const Chunk> chunks,
                                  double threshold_low = 0.05,
                                  double threshold_high = 0.10,
                                  ComparisonMode mode = ComparisonMode::Consecutive);

}  // namespace driftscape
