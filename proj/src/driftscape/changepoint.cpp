#include "driftscape/changepoint.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "driftscape/csv.hpp"
#include "driftscape/error.hpp"

namespace driftscape {

Segmentation pelt(std::span<const double> series, double penalty) {
  const std::size_t n = series.size();
  if (n < 2) {
    raise(ErrorCode::SeriesTooShort, "pelt: series needs at least 2 values");
  }
  if (!(penalty > 0.0)) {
    raise(ErrorCode::ConfigInvalid, "pelt: penalty must be positive");
  }
  for (double v : series) {
    if (!std::isfinite(v)) raise(ErrorCode::NonFiniteInput, "pelt: non-finite value");
  }

  std::vector<double> sum(n + 1, 0.0);
  std::vector<double> sum_sq(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[i + 1] = sum[i] + series[i];
    sum_sq[i + 1] = sum_sq[i] + series[i] * series[i];
  }
  const auto cost = [&](std::size_t i, std::size_t j) {
    // L2 cost of fitting a constant mean on [i, j).
    const double s = sum[j] - sum[i];
    const double ss = sum_sq[j] - sum_sq[i];
    return ss - s * s / static_cast<double>(j - i);
  };

  std::vector<double> f(n + 1, 0.0);
  std::vector<std::size_t> prev(n + 1, 0);
  f[0] = -penalty;
  std::vector<std::size_t> candidates{0};
  std::vector<std::size_t> kept;

  for (std::size_t s = 1; s <= n; ++s) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_t = 0;
    for (std::size_t t : candidates) {
      const double value = f[t] + cost(t, s) + penalty;
      if (value < best) {
        best = value;
        best_t = t;
      }
    }
    f[s] = best;
    prev[s] = best_t;

    kept.clear();
    for (std::size_t t : candidates) {
      if (f[t] + cost(t, s) <= f[s]) kept.push_back(t);
    }
    kept.push_back(s);
    candidates.swap(kept);
  }

  Segmentation seg;
  seg.penalty = penalty;
  seg.objective = f[n];
  for (std::size_t s = n; s > 0; s = prev[s]) {
    if (prev[s] > 0) seg.breakpoints.push_back(prev[s]);
  }
  std::reverse(seg.breakpoints.begin(), seg.breakpoints.end());
  return seg;
}

double pelt_default_penalty(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) {
    raise(ErrorCode::SeriesTooShort, "pelt penalty: series needs at least 2 values");
  }
  std::vector<double> abs_diffs(n - 1);
  double diff_mean = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = series[i + 1] - series[i];
    abs_diffs[i] = std::abs(d);
    diff_mean += d;
  }
  diff_mean /= static_cast<double>(n - 1);

  std::vector<double> sorted = abs_diffs;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median =
      (m % 2 == 1) ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

  double sigma_sq;
  if (median > 0.0) {
    // Gaussian-consistent scale from the median absolute difference; the
    // sqrt(2) removes the differencing inflation, 0.6745 is the normal
    // third-quartile constant.
    const double sigma = median / (0.6744897501960817 * std::sqrt(2.0));
    sigma_sq = sigma * sigma;
  } else {
    double var = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double d = (series[i + 1] - series[i]) - diff_mean;
      var += d * d;
    }
    var /= static_cast<double>(n - 1);
    sigma_sq = var / 2.0;
  }
  if (sigma_sq <= 0.0) sigma_sq = 1e-12;  // constant series
  return 2.0 * sigma_sq * std::log(static_cast<double>(n));
}

std::vector<std::size_t> segment_ids(std::size_t n,
                                     std::span<const std::size_t> breakpoints) {
  std::vector<std::size_t> ids(n, 0);
  std::size_t seg = 0;
  std::size_t next = breakpoints.empty() ? n : breakpoints[0];
  std::size_t bp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (i >= next) {
      ++seg;
      ++bp;
      next = (bp < breakpoints.size()) ? breakpoints[bp] : n;
    }
    ids[i] = seg;
  }
  return ids;
}

MeanDistanceSeries read_means_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open means csv: " + path);
  MeanDistanceSeries series;
  std::string line;
  bool header_skipped = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!header_skipped) {
      header_skipped = true;
      if (!fields.empty() && fields[0] == "chunk_index") continue;
    }
    if (fields.size() < 2) {
      raise(ErrorCode::IoError, "means csv row needs 2 columns: " + path);
    }
    try {
      series.values.push_back(std::stod(fields[1]));
    } catch (const std::exception&) {
      raise(ErrorCode::IoError, "means csv has a non-numeric value: " + path);
    }
  }
  return series;
}

void write_pelt_csv(const std::string& path, const MeanDistanceSeries& series,
                    const Segmentation& segmentation) {
  const auto ids = segment_ids(series.values.size(), segmentation.breakpoints);
  std::ostringstream out;
  out << "chunk_index,mean_distance,segment_id\n";
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    out << i << ',' << format_double(series.values[i]) << ',' << ids[i] << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace driftscape
