#include "driftscape.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "driftscape/csv.hpp"
#include "driftscape/error.hpp"
#include "driftscape/changepoint.hpp"
#include "driftscape/mnist.hpp"
#include "driftscape/pipeline.hpp"
#include "driftscape/streamgen.hpp"

namespace {

thread_local std::string g_last_error;

ds_status status_from(const driftscape::Error& e) {
  switch (e.category()) {
    case driftscape::ErrorCategory::Config: return DS_ERR_CONFIG;
    case driftscape::ErrorCategory::Data: return DS_ERR_DATA;
    case driftscape::ErrorCategory::Internal: return DS_ERR_INTERNAL;
  }
  return DS_ERR_INTERNAL;
}

template <class Fn>
ds_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return DS_OK;
  } catch (const driftscape::Error& e) {
    g_last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DS_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DS_ERR_INTERNAL;
  }
}

ds_status invalid_argument(const char* message) {
  g_last_error = message;
  return DS_ERR_CONFIG;
}

}  // namespace

struct ds_mnist {
  driftscape::ImageSet set;
  driftscape::DigitIndex index;
};

struct ds_stream {
  driftscape::AnnotatedStream stream;
};

struct ds_config {
  driftscape::RunConfig config;
};

struct ds_report {
  driftscape::RunReport report;
  std::string text;
};

extern "C" {

const char* ds_version(void) { return "0.1.0"; }

const char* ds_last_error(void) { return g_last_error.c_str(); }

ds_status ds_mnist_open(const char* dir, ds_mnist** out) {
  if (!dir || !out) return invalid_argument("ds_mnist_open: null argument");
  *out = nullptr;
  return guarded([&] {
    auto pool = std::make_unique<ds_mnist>();
    pool->set = driftscape::load_mnist_dir(dir);
    pool->index = driftscape::build_digit_index(pool->set);
    *out = pool.release();
  });
}

void ds_mnist_close(ds_mnist* pool) { delete pool; }

size_t ds_mnist_count(const ds_mnist* pool) { return pool ? pool->set.size() : 0; }

ds_status ds_stream_generate(const ds_mnist* pool, const char* case_name,
                             uint64_t seed, ds_stream** out) {
  if (!pool || !case_name || !out) {
    return invalid_argument("ds_stream_generate: null argument");
  }
  *out = nullptr;
  return guarded([&] {
    auto stream = std::make_unique<ds_stream>();
    stream->stream = driftscape::generate_stream(
        driftscape::CaseSpec::builtin(case_name), pool->index, pool->set, seed);
    *out = stream.release();
  });
}

ds_status ds_stream_write(const ds_stream* stream, const char* data_path,
                          const char* sidecar_path) {
  if (!stream || !data_path) return invalid_argument("ds_stream_write: null argument");
  return guarded([&] {
    const std::string sidecar =
        sidecar_path ? sidecar_path : std::string(data_path) + ".json";
    driftscape::save_stream(stream->stream, data_path, sidecar);
  });
}

ds_status ds_stream_open(const char* data_path, const char* sidecar_path,
                         ds_stream** out) {
  if (!data_path || !out) return invalid_argument("ds_stream_open: null argument");
  *out = nullptr;
  return guarded([&] {
    auto stream = std::make_unique<ds_stream>();
    const std::string sidecar =
        sidecar_path ? sidecar_path : std::string(data_path) + ".json";
    stream->stream = driftscape::load_stream(data_path, sidecar);
    *out = stream.release();
  });
}

void ds_stream_close(ds_stream* stream) { delete stream; }

size_t ds_stream_length(const ds_stream* stream) {
  return stream ? stream->stream.size() : 0;
}

ds_status ds_config_create(ds_config** out) {
  if (!out) return invalid_argument("ds_config_create: null argument");
  *out = nullptr;
  return guarded([&] { *out = new ds_config(); });
}

ds_status ds_config_load(const char* path, ds_config** out) {
  if (!path || !out) return invalid_argument("ds_config_load: null argument");
  *out = nullptr;
  return guarded([&] {
    auto config = std::make_unique<ds_config>();
    config->config = driftscape::parse_config_file(path);
    *out = config.release();
  });
}

ds_status ds_config_set(ds_config* config, const char* key, const char* value) {
  if (!config || !key || !value) {
    return invalid_argument("ds_config_set: null argument");
  }
  return guarded([&] { driftscape::apply_config_pair(config->config, key, value); });
}

void ds_config_destroy(ds_config* config) { delete config; }

ds_status ds_run(const ds_config* config, ds_report** out) {
  if (!config) return invalid_argument("ds_run: null config");
  if (out) *out = nullptr;
  return guarded([&] {
    driftscape::RunOutputs outputs = driftscape::run(config->config);
    if (out) {
      auto report = std::make_unique<ds_report>();
      report->report = outputs.report;
      report->text = driftscape::read_text_file(
          (std::filesystem::path(config->config.out_dir) / "report.txt").string());
      *out = report.release();
    }
  });
}

double ds_report_value(const ds_report* report, const char* field) {
  if (!report || !field) return std::nan("");
  const driftscape::RunReport& r = report->report;
  const std::string key(field);
  if (key == "chunk_size") return static_cast<double>(r.chunk_size);
  if (key == "seed") return static_cast<double>(r.seed);
  if (key == "n_chunks") return static_cast<double>(r.n_chunks);
  if (key == "n_records") return static_cast<double>(r.n_records);
  if (key == "flags05") return static_cast<double>(r.flags_05);
  if (key == "flags10") return static_cast<double>(r.flags_10);
  if (key == "boundaries_streamed") return static_cast<double>(r.boundaries_streamed);
  if (key == "boundaries_total") return static_cast<double>(r.boundaries_total);
  if (key == "detection_rate") return r.detection_rate;
  if (key == "false_alarm_rate") return r.false_alarm_rate;
  if (key == "wall_time_sec") return r.wall_time_sec;
  return std::nan("");
}

const char* ds_report_text(const ds_report* report) {
  return report ? report->text.c_str() : "";
}

void ds_report_destroy(ds_report* report) { delete report; }

ds_status ds_pelt_csv(const char* means_csv, double penalty, const char* out_csv,
                      size_t** breakpoints, size_t* breakpoint_count) {
  if (!means_csv || !out_csv) return invalid_argument("ds_pelt_csv: null argument");
  if (breakpoints) *breakpoints = nullptr;
  if (breakpoint_count) *breakpoint_count = 0;
  return guarded([&] {
    const driftscape::MeanDistanceSeries series = driftscape::read_means_csv(means_csv);
    const double effective =
        penalty > 0.0 ? penalty : driftscape::pelt_default_penalty(series.values);
    const driftscape::Segmentation seg = driftscape::pelt(series.values, effective);
    driftscape::write_pelt_csv(out_csv, series, seg);
    if (breakpoints && breakpoint_count && !seg.breakpoints.empty()) {
      auto* data = static_cast<size_t*>(
          std::malloc(seg.breakpoints.size() * sizeof(size_t)));
      if (data) {
        std::memcpy(data, seg.breakpoints.data(),
                    seg.breakpoints.size() * sizeof(size_t));
        *breakpoints = data;
        *breakpoint_count = seg.breakpoints.size();
      }
    }
  });
}

ds_status ds_report_table(const char* const* report_csv_paths, size_t count,
                          const char* out_txt, const char* out_csv) {
  if (count > 0 && !report_csv_paths) {
    return invalid_argument("ds_report_table: null path list");
  }
  return guarded([&] {
    std::vector<driftscape::RunReport> reports;
    reports.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      reports.push_back(driftscape::read_report_csv(report_csv_paths[i]));
    }
    if (out_txt) {
      driftscape::write_text_file(out_txt, driftscape::format_table_text(reports));
    }
    if (out_csv) {
      driftscape::write_text_file(out_csv, driftscape::format_table_csv(reports));
    }
  });
}

}  // extern "C"
