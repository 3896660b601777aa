#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "common/fixtures.hpp"
#include "driftscape/csv.hpp"
#include "driftscape/error.hpp"
#include "driftscape/pipeline.hpp"

using namespace driftscape;

namespace {

// Lightweight config so pipeline tests stay fast; counts and plumbing do not
// depend on model quality.
RunConfig small_som_config() {
  RunConfig config;
  config.case_name = "C";
  config.mnist_dir = fixtures::mnist_dir();
  config.projector = ProjectorKind::Som;
  config.chunk_size = 250;
  config.grid_rows = 4;
  config.grid_cols = 4;
  config.som.epochs = 1;
  config.seed = 7;
  return config;
}

class TrackingSource final : public SampleSource {
 public:
  explicit TrackingSource(const AnnotatedStream& stream) : stream_(stream) {}
  std::size_t size() const override { return stream_.size(); }
  std::size_t dim() const override { return stream_.dim; }
  std::span<const float> sample(std::size_t i) const override {
    ++reads;
    max_read = std::max(max_read, i);
    return stream_.sample(i);
  }

  mutable std::size_t reads = 0;
  mutable std::size_t max_read = 0;

 private:
  const AnnotatedStream& stream_;
};

}  // namespace

TEST_CASE("config files parse into run configs") {
  const std::string dir = fixtures::make_temp_dir("config");
  const std::string path = dir + "/run.cfg";
  write_text_file(path,
                  "# demo configuration\n"
                  "case = B\n"
                  "projector = kpca\n"
                  "chunk_size = 100\n"
                  "warmup_fraction = 0.25\n"
                  "grid_rows = 6\n"
                  "grid_cols = 5\n"
                  "latent_dim = 3\n"
                  "kmeans_k = 40\n"
                  "seed = 99\n"
                  "thresholds = 0.01, 0.2\n"
                  "sampling = pooled\n"
                  "fixed_reference = true\n"
                  "som_epochs = 4\n"
                  "start_offset = 5000\n"
                  "out_dir = /tmp/somewhere\n");
  const RunConfig config = parse_config_file(path);
  CHECK(config.case_name == "B");
  CHECK(config.projector == ProjectorKind::Kpca);
  CHECK(config.chunk_size == 100);
  CHECK(config.warmup_fraction == doctest::Approx(0.25));
  CHECK(config.grid_rows == 6);
  CHECK(config.grid_cols == 5);
  CHECK(config.latent_dim == 3);
  CHECK(config.kmeans_k == 40);
  CHECK(config.seed == 99);
  CHECK(config.threshold_low == doctest::Approx(0.01));
  CHECK(config.threshold_high == doctest::Approx(0.2));
  CHECK(config.sampling == GroupSampling::PooledUniform);
  CHECK(config.fixed_reference);
  CHECK(config.som.epochs == 4);
  REQUIRE(config.start_offset.has_value());
  CHECK(*config.start_offset == 5000);
  CHECK(config.out_dir == "/tmp/somewhere");
  validate_config(config);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unknown keys and bad values are config errors") {
  RunConfig config;
  try {
    apply_config_pair(config, "no_such_key", "1");
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
  try {
    apply_config_pair(config, "chunk_size", "many");
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
  config.chunk_size = 1;
  try {
    validate_config(config);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
}

TEST_CASE("evaluate matches flags to boundaries") {
  StreamAnnotation annotation;
  annotation.total_len = 1000;
  annotation.segment_len = 200;
  annotation.boundaries = {200, 400, 600, 800};

  std::vector<Chunk> chunks;
  for (std::size_t i = 0; i < 10; ++i) {
    chunks.push_back({i, i * 100, (i + 1) * 100, false});
  }
  const auto record_at = [&](std::size_t chunk_index, bool flagged) {
    PValueRecord r;
    r.chunk_index = chunk_index;
    r.begin = chunks[chunk_index].begin;
    r.end = chunks[chunk_index].end;
    r.flag_05 = flagged;
    r.flag_10 = flagged;
    r.p_value = flagged ? 0.01 : 0.9;
    return r;
  };

  SUBCASE("flags exactly at boundary chunks detect everything") {
    std::vector<PValueRecord> records;
    for (std::size_t i = 1; i < 10; ++i) {
      const bool at_boundary = (i * 100) % 200 == 0;
      records.push_back(record_at(i, at_boundary));
    }
    const EvalResult eval = evaluate(records, chunks, annotation, 1);
    CHECK(eval.boundaries_considered == 4);
    CHECK(eval.detection_rate == doctest::Approx(1.0));
    CHECK(eval.false_alarm_rate == doctest::Approx(0.0));
  }
  SUBCASE("no flags mean zero detections and zero false alarms") {
    std::vector<PValueRecord> records;
    for (std::size_t i = 1; i < 10; ++i) records.push_back(record_at(i, false));
    const EvalResult eval = evaluate(records, chunks, annotation, 1);
    CHECK(eval.detection_rate == doctest::Approx(0.0));
    CHECK(eval.false_alarm_rate == doctest::Approx(0.0));
  }
  SUBCASE("a lone distant flag is a pure false alarm") {
    StreamAnnotation sparse;
    sparse.total_len = 1000;
    sparse.segment_len = 1000;
    sparse.boundaries = {900};
    std::vector<PValueRecord> records = {record_at(1, true)};
    const EvalResult eval = evaluate(records, chunks, sparse, 1);
    CHECK(eval.boundaries_considered == 1);
    CHECK(eval.detection_rate == doctest::Approx(0.0));
    CHECK(eval.false_alarm_rate == doctest::Approx(1.0));
  }
  SUBCASE("each flag matches at most one boundary") {
    StreamAnnotation dense;
    dense.total_len = 1000;
    dense.segment_len = 100;
    dense.boundaries = {400, 500};
    std::vector<PValueRecord> records = {record_at(4, true)};
    const EvalResult eval = evaluate(records, chunks, dense, 1);
    CHECK(eval.boundaries_matched == 1);
    CHECK(eval.false_alarm_rate == doctest::Approx(0.0));
    CHECK(eval.detection_rate == doctest::Approx(0.5));
  }
}

TEST_CASE("case C with chunk 250 streams 64 chunks and 63 records") {
  const RunConfig config = small_som_config();
  const AnnotatedStream stream =
      generate_stream(CaseSpec::builtin("C"), fixtures::digit_index(),
                      fixtures::image_set(), config.seed);
  const StreamSamples source(stream);
  const RunOutputs out = run_on_source(config, source, stream.annotation);
  CHECK(out.chunks.size() == 64);
  CHECK(out.records.size() == 63);
  CHECK(out.pe.size() == 64);
  CHECK(out.mean_distances.size() == 64);
  CHECK(out.report.boundaries_streamed == 32);
  CHECK(out.report.boundaries_total == 39);
  CHECK(out.report.flags_05 <= out.report.flags_10);
  for (const auto& pe : out.pe) CHECK(pe.values.size() == 250);
}

TEST_CASE("detector reads no future samples and no labels") {
  RunConfig config = small_som_config();
  AnnotatedStream stream =
      generate_stream(CaseSpec::builtin("C"), fixtures::digit_index(),
                      fixtures::image_set(), config.seed);

  const TrackingSource tracking(stream);
  std::size_t hook_calls = 0;
  const RunOutputs tracked =
      run_on_source(config, tracking, stream.annotation,
                    [&](const Chunk& chunk, const PeVector&, const PValueRecord*) {
                      ++hook_calls;
                      // Online discipline: nothing beyond the current chunk has
                      // been touched when its results commit.
                      CHECK(tracking.max_read < chunk.end);
                    });
  CHECK(hook_calls == tracked.chunks.size());
  CHECK(tracking.max_read == tracked.chunks.back().end - 1);

  // Label blindness: wiping the labels changes nothing on the detector path.
  AnnotatedStream unlabeled = stream;
  unlabeled.sample_labels.clear();
  const StreamSamples source(unlabeled);
  const RunOutputs plain = run_on_source(config, source, stream.annotation);
  REQUIRE(plain.records.size() == tracked.records.size());
  for (std::size_t i = 0; i < plain.records.size(); ++i) {
    CHECK(plain.records[i].u_statistic == tracked.records[i].u_statistic);
    CHECK(plain.records[i].p_value == tracked.records[i].p_value);
  }
}

TEST_CASE("full runs are byte-deterministic given config and seed") {
  RunConfig config = small_som_config();
  const std::string dir_a = fixtures::make_temp_dir("det_a");
  const std::string dir_b = fixtures::make_temp_dir("det_b");

  config.out_dir = dir_a;
  config.model_cache = dir_a + "/model.bin";
  run(config);
  config.out_dir = dir_b;
  config.model_cache = dir_b + "/model.bin";
  run(config);

  CHECK(read_text_file(dir_a + "/results.csv") == read_text_file(dir_b + "/results.csv"));
  CHECK(read_text_file(dir_a + "/means.csv") == read_text_file(dir_b + "/means.csv"));

  const auto bytes = [](const std::string& p) { return read_text_file(p); };
  CHECK(bytes(dir_a + "/model.bin") == bytes(dir_b + "/model.bin"));

  // Warm cache reuse leaves the outputs identical as well.
  const std::string dir_c = fixtures::make_temp_dir("det_c");
  config.out_dir = dir_c;
  config.model_cache = dir_b + "/model.bin";
  run(config);
  CHECK(read_text_file(dir_c + "/results.csv") == read_text_file(dir_a + "/results.csv"));

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
  std::filesystem::remove_all(dir_c);
}

TEST_CASE("results csv has the documented schema") {
  RunConfig config = small_som_config();
  config.chunk_size = 500;  // fewer chunks, faster
  const std::string dir = fixtures::make_temp_dir("schema");
  config.out_dir = dir;
  const RunOutputs out = run(config);

  const std::string results = read_text_file(dir + "/results.csv");
  CHECK(results.find("chunk_index,start_sample,end_sample,u_statistic,p_value,"
                     "flag05,flag10,boundary_inside\n") == 0);
  const std::string means = read_text_file(dir + "/means.csv");
  CHECK(means.find("chunk_index,mean_distance\n") == 0);

  const RunReport loaded = read_report_csv(dir + "/report.csv");
  CHECK(loaded.case_name == out.report.case_name);
  CHECK(loaded.flags_05 == out.report.flags_05);
  CHECK(loaded.n_chunks == out.report.n_chunks);
  CHECK(loaded.boundaries_streamed == out.report.boundaries_streamed);
  std::filesystem::remove_all(dir);
}

TEST_CASE("diagram dumps list one row per finite bar") {
  RunConfig config = small_som_config();
  config.chunk_size = 500;
  config.start_offset = 18000;  // 4 chunks only
  const std::string dir = fixtures::make_temp_dir("dump");
  config.out_dir = dir;
  config.dump_diagrams = dir + "/diagrams.csv";
  const RunOutputs out = run(config);
  CHECK(out.chunks.size() == 4);

  const std::string dump = read_text_file(config.dump_diagrams);
  CHECK(dump.find("chunk,point,bar_index,lifetime\n") == 0);
  // 4 chunks x 500 points x up to 15 bars each; at least one row per point.
  std::size_t rows = std::count(dump.begin(), dump.end(), '\n') - 1;
  CHECK(rows >= 4 * 500);
  std::filesystem::remove_all(dir);
}

TEST_CASE("report tables aggregate runs") {
  RunReport a;
  a.case_name = "C";
  a.projector = "SOM";
  a.chunk_size = 250;
  a.boundaries_streamed = 32;
  a.flags_05 = 30;
  a.flags_10 = 35;
  RunReport b = a;
  b.projector = "PCA";
  b.flags_05 = 8;
  b.flags_10 = 10;

  const std::string text = format_table_text(std::vector<RunReport>{a, b});
  CHECK(text.find("SOM") != std::string::npos);
  CHECK(text.find("PCA") != std::string::npos);
  const std::string csv = format_table_csv(std::vector<RunReport>{a, b});
  CHECK(csv.find("C,250,PCA,32,8,10") != std::string::npos);
  CHECK(csv.find("C,250,SOM,32,30,35") != std::string::npos);

  CHECK(format_table_text({}) == "");
}

TEST_CASE("builtin cases require a digit pool directory") {
  RunConfig config;
  config.case_name = "A";
  config.mnist_dir = "";
  try {
    run(config);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigInvalid);
  }
}
