#include "driftscape/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftscape/error.hpp"

namespace driftscape {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

RankResult rank_with_ties(std::span<const double> pooled) {
  if (pooled.empty()) {
    raise(ErrorCode::NonFiniteInput, "rank_with_ties: empty input");
  }
  for (double v : pooled) {
    if (!std::isfinite(v)) {
      raise(ErrorCode::NonFiniteInput, "rank_with_ties: non-finite value");
    }
  }
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });

  RankResult result;
  result.ranks.resize(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // Positions i..j (0-based) share the midrank of ranks i+1..j+1.
    const double midrank = 0.5 * static_cast<double>(i + 1 + j + 1);
    for (std::size_t k = i; k <= j; ++k) result.ranks[order[k]] = midrank;
    if (j > i) result.tie_sizes.push_back(j - i + 1);
    i = j + 1;
  }
  return result;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na < 2 || nb < 2) {
    raise(ErrorCode::SampleTooSmall, "mann_whitney_u: both samples need >= 2 values");
  }
  std::vector<double> pooled;
  pooled.reserve(na + nb);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  const RankResult ranking = rank_with_ties(pooled);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranking.ranks[i];

  const double dna = static_cast<double>(na);
  const double dnb = static_cast<double>(nb);
  const double n = dna + dnb;
  const double u = rank_sum_a - dna * (dna + 1.0) / 2.0;
  const double mean_u = dna * dnb / 2.0;

  double tie_term = 0.0;
  for (std::size_t t : ranking.tie_sizes) {
    const double dt = static_cast<double>(t);
    tie_term += dt * dt * dt - dt;
  }
  const double variance =
      dna * dnb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));

  MannWhitneyResult result;
  result.u = u;
  if (variance <= 0.0) {
    result.p = 1.0;  // every pooled value tied
    return result;
  }
  const double sigma = std::sqrt(variance);
  const double diff = u - mean_u;
  double z = 0.0;
  if (diff > 0.0) {
    z = (diff - 0.5) / sigma;
  } else if (diff < 0.0) {
    z = (diff + 0.5) / sigma;
  }
  result.p = std::clamp(2.0 * normal_cdf(-std::abs(z)), 0.0, 1.0);
  return result;
}

PValueRecord make_record(const PeVector& reference, const PeVector& current,
                         const Chunk& chunk, double threshold_low,
                         double threshold_high) {
  const MannWhitneyResult mw = mann_whitney_u(current.values, reference.values);
  PValueRecord record;
  record.chunk_index = current.chunk_index;
  record.begin = chunk.begin;
  record.end = chunk.end;
  record.u_statistic = mw.u;
  record.p_value = mw.p;
  record.flag_05 = mw.p < threshold_low;
  record.flag_10 = mw.p < threshold_high;
  record.boundary_inside = chunk.has_boundary;
  return record;
}

std::vector<PValueRecord> monitor(std::span<const PeVector> pe,
                                  std::span<const Chunk> chunks,
                                  double threshold_low, double threshold_high,
                                  ComparisonMode mode) {
  if (pe.size() != chunks.size()) {
    raise(ErrorCode::DimensionMismatch, "monitor: pe/chunk sequences differ in length");
  }
  std::vector<PValueRecord> records;
  if (pe.size() < 2) return records;
  records.reserve(pe.size() - 1);
  for (std::size_t i = 1; i < pe.size(); ++i) {
    const PeVector& reference =
        (mode == ComparisonMode::Consecutive) ? pe[i - 1] : pe[0];
    records.push_back(
        make_record(reference, pe[i], chunks[i], threshold_low, threshold_high));
  }
  return records;
}

}  // namespace driftscape
