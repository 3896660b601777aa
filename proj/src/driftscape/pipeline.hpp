#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "driftscape/projector.hpp"
#include "driftscape/stats.hpp"
#include "driftscape/streamgen.hpp"
#include "driftscape/topology.hpp"
#include "driftscape/window.hpp"

namespace driftscape {

struct RunConfig {
  // Stream source: builtin case name (A/B/C, generated from mnist_dir) or a
  // path to a stream container written by `generate`.
  std::string case_name = "C";
  std::string mnist_dir;
  std::string annotation_path;  // defaults to "<case path>.json" for stream files

  ProjectorKind projector = ProjectorKind::Som;
  std::size_t chunk_size = 250;
  double warmup_fraction = 0.20;
  std::size_t grid_rows = 10;
  std::size_t grid_cols = 10;
  std::size_t latent_dim = 2;   // PCA / kernel PCA
  std::size_t kmeans_k = 100;   // centroid count for PCA / kernel PCA
  std::uint64_t seed = 1;
  double threshold_low = 0.05;
  double threshold_high = 0.10;

  // Streaming starts at the end of the warm-up window unless overridden
  // (0 replays the warm-up region through the detector as well).
  std::optional<std::size_t> start_offset;
  GroupSampling sampling = GroupSampling::ClassUniform;
  bool fixed_reference = false;  // compare against chunk 0 instead of chunk i-1

  SomParams som;
  double kpca_gamma = 0.0;      // <= 0 selects the bandwidth heuristic
  std::size_t kpca_cap = 0;     // subsample cap for retained kernel points; 0 = none

  std::size_t eval_tolerance_chunks = 1;
  std::string out_dir = ".";
  std::string model_cache;      // optional cache path for the fitted projector
  std::string dump_diagrams;    // optional CSV dump of per-point diagrams
};

RunConfig parse_config_file(const std::string& path);
void apply_config_pair(RunConfig& config, const std::string& key,
                       const std::string& value);
void validate_config(const RunConfig& config);

struct RunReport {
  std::string case_name;
  std::string projector;
  std::size_t chunk_size = 0;
  std::uint64_t seed = 0;
  std::size_t n_chunks = 0;
  std::size_t n_records = 0;
  std::size_t flags_05 = 0;
  std::size_t flags_10 = 0;
  std::size_t boundaries_streamed = 0;  // annotated boundaries inside the chunked region
  std::size_t boundaries_total = 0;     // internal boundaries over the full stream
  double detection_rate = 0.0;
  double false_alarm_rate = 0.0;
  std::size_t eval_tolerance_chunks = 1;
  double wall_time_sec = 0.0;
};

struct RunOutputs {
  std::vector<Chunk> chunks;
  std::vector<double> mean_distances;  // one per chunk
  std::vector<PeVector> pe;
  std::vector<PValueRecord> records;
  RunReport report;
};

struct EvalResult {
  double detection_rate = 0.0;
  double false_alarm_rate = 0.0;
  std::size_t boundaries_considered = 0;
  std::size_t boundaries_matched = 0;
  std::size_t flags = 0;
};

// Matches low-threshold flags to annotated boundaries: a boundary counts as
// detected when a flagged record lies within tolerance_chunks of the chunk
// containing it; each flag matches at most one boundary (greedy nearest,
// distance ties to the earlier boundary); unmatched flags are false alarms.
EvalResult evaluate(std::span<const PValueRecord> records,
                    std::span<const Chunk> chunks,
                    const StreamAnnotation& annotation,
                    std::size_t tolerance_chunks);

// Called after each chunk commits; record is null for the first chunk.
using ChunkHook =
    std::function<void(const Chunk&, const PeVector&, const PValueRecord*)>;

// The warm-up fit plus the online loop, reading samples only through the
// SampleSource so callers can interpose access tracking. Does not touch the
// filesystem except for the optional model cache.
RunOutputs run_on_source(const RunConfig& config, const SampleSource& source,
                         const StreamAnnotation& annotation,
                         const ChunkHook& hook = {});

// Full run: resolve or generate the stream, run the detector, and write
// results.csv, means.csv, report.txt and report.csv into out_dir.
RunOutputs run(const RunConfig& config);

void write_results_csv(const std::string& path,
                       std::span<const PValueRecord> records);
void write_means_csv(const std::string& path, std::span<const Chunk> chunks,
                     std::span<const double> means);
void write_report_files(const std::string& dir, const RunReport& report);
RunReport read_report_csv(const std::string& path);

// Table-style summary across runs: one row per (case, chunk size, method)
// with streamed drift counts and both flag totals.
std::string format_table_text(std::span<const RunReport> reports);
std::string format_table_csv(std::span<const RunReport> reports);

// Adapter exposing an AnnotatedStream's samples to the detector.
class StreamSamples final : public SampleSource {
 public:
  explicit StreamSamples(const AnnotatedStream& stream) : stream_(stream) {}
  std::size_t size() const override { return stream_.size(); }
  std::size_t dim() const override { return stream_.dim; }
  std::span<const float> sample(std::size_t i) const override {
    return stream_.sample(i);
  }

 private:
  const AnnotatedStream& stream_;
};

}  // namespace driftscape
