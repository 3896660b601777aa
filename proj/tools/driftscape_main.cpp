// Command-line front end for the driftscape shared library. Talks to the core
// exclusively through the C API in driftscape.h.

#include <glob.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "driftscape.h"

namespace {

int exit_code_for(ds_status status) {
  switch (status) {
    case DS_OK: return 0;
    case DS_ERR_CONFIG: return 2;
    case DS_ERR_DATA: return 3;
    case DS_ERR_INTERNAL: return 1;
  }
  return 1;
}

int fail(ds_status status, const char* what) {
  std::fprintf(stderr, "driftscape: %s: %s\n", what, ds_last_error());
  return exit_code_for(status);
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  std::vector<std::string> paths;
  glob_t results{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &results);
  if (rc == 0) {
    for (size_t i = 0; i < results.gl_pathc; ++i) {
      paths.emplace_back(results.gl_pathv[i]);
    }
  }
  globfree(&results);
  return paths;
}

int cmd_generate(const std::string& case_name, const std::string& mnist_dir,
                 unsigned long long seed, const std::string& out_path) {
  ds_mnist* pool = nullptr;
  ds_status status = ds_mnist_open(mnist_dir.c_str(), &pool);
  if (status != DS_OK) return fail(status, "loading digit pool");

  ds_stream* stream = nullptr;
  status = ds_stream_generate(pool, case_name.c_str(), seed, &stream);
  if (status != DS_OK) {
    ds_mnist_close(pool);
    return fail(status, "generating stream");
  }
  status = ds_stream_write(stream, out_path.c_str(), nullptr);
  const size_t length = ds_stream_length(stream);
  ds_stream_close(stream);
  ds_mnist_close(pool);
  if (status != DS_OK) return fail(status, "writing stream");
  std::printf("wrote %zu samples to %s (+ %s.json)\n", length, out_path.c_str(),
              out_path.c_str());
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::string& model_cache, const std::string& dump_diagrams) {
  ds_config* config = nullptr;
  ds_status status = ds_config_load(config_path.c_str(), &config);
  if (status != DS_OK) return fail(status, "loading config");

  const auto override_key = [&](const char* key, const std::string& value) {
    if (status == DS_OK && !value.empty()) {
      status = ds_config_set(config, key, value.c_str());
    }
  };
  override_key("out_dir", out_dir);
  override_key("model_cache", model_cache);
  override_key("dump_diagrams", dump_diagrams);
  if (status != DS_OK) {
    ds_config_destroy(config);
    return fail(status, "applying overrides");
  }

  ds_report* report = nullptr;
  status = ds_run(config, &report);
  ds_config_destroy(config);
  if (status != DS_OK) return fail(status, "running pipeline");
  std::fputs(ds_report_text(report), stdout);
  ds_report_destroy(report);
  return 0;
}

int cmd_pelt(const std::string& means_path, double penalty,
             const std::string& out_path) {
  size_t* breakpoints = nullptr;
  size_t count = 0;
  const ds_status status =
      ds_pelt_csv(means_path.c_str(), penalty, out_path.c_str(), &breakpoints, &count);
  if (status != DS_OK) return fail(status, "running change-point detection");
  std::printf("breakpoints (%zu):", count);
  for (size_t i = 0; i < count; ++i) std::printf(" %zu", breakpoints[i]);
  std::printf("\nwrote %s\n", out_path.c_str());
  std::free(breakpoints);
  return 0;
}

int cmd_report(const std::string& pattern, const std::string& out_txt,
               const std::string& out_csv) {
  const std::vector<std::string> paths = expand_glob(pattern);
  if (paths.empty()) {
    std::fprintf(stderr, "driftscape: no report files match '%s'\n", pattern.c_str());
    return 3;
  }
  std::vector<const char*> cpaths;
  cpaths.reserve(paths.size());
  for (const auto& p : paths) cpaths.push_back(p.c_str());

  // Render to a temp file when no text output was requested so the table can
  // still be echoed to stdout.
  std::string txt_path = out_txt;
  bool temp_txt = false;
  if (txt_path.empty()) {
    txt_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
               "/driftscape_table.txt";
    temp_txt = true;
  }
  const ds_status status =
      ds_report_table(cpaths.data(), cpaths.size(), txt_path.c_str(),
                      out_csv.empty() ? nullptr : out_csv.c_str());
  if (status != DS_OK) return fail(status, "aggregating reports");

  if (std::FILE* f = std::fopen(txt_path.c_str(), "rb")) {
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), f)) > 0) {
      std::fwrite(buf, 1, got, stdout);
    }
    std::fclose(f);
  }
  if (temp_txt) std::remove(txt_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"driftscape: topological drift detection over data streams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ds_version()));

  auto* generate = app.add_subcommand("generate", "Generate an annotated stream");
  std::string gen_case = "C";
  std::string gen_mnist;
  unsigned long long gen_seed = 1;
  std::string gen_out = "stream.bin";
  generate->add_option("--case", gen_case, "Scenario: A, B or C")->required();
  generate->add_option("--mnist", gen_mnist, "Directory with the 4 IDX files")->required();
  generate->add_option("--seed", gen_seed, "Generation seed");
  generate->add_option("--out", gen_out, "Output stream path (sidecar: <out>.json)");

  auto* run = app.add_subcommand("run", "Run the drift detection pipeline");
  std::string run_config;
  std::string run_out;
  std::string run_cache;
  std::string run_dump;
  run->add_option("--config", run_config, "Key = value configuration file")->required();
  run->add_option("--out", run_out, "Override the output directory");
  run->add_option("--model-cache", run_cache, "Cache file for the fitted projector");
  run->add_option("--dump-diagrams", run_dump, "CSV dump of per-point diagrams");

  auto* pelt = app.add_subcommand("pelt", "Offline change-point pass over means.csv");
  std::string pelt_means;
  double pelt_penalty = 0.0;
  std::string pelt_out = "pelt.csv";
  pelt->add_option("--means", pelt_means, "means.csv produced by `run`")->required();
  pelt->add_option("--penalty", pelt_penalty, "Penalty (<= 0 for the data-driven default)");
  pelt->add_option("--out", pelt_out, "Output CSV with per-chunk segment ids");

  auto* report = app.add_subcommand("report", "Aggregate run reports into a table");
  std::string report_glob;
  std::string report_txt;
  std::string report_csv;
  report->add_option("--glob", report_glob, "Glob pattern for report.csv files")->required();
  report->add_option("--out-txt", report_txt, "Write the aligned table here");
  report->add_option("--out-csv", report_csv, "Write the table as CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (generate->parsed()) return cmd_generate(gen_case, gen_mnist, gen_seed, gen_out);
  if (run->parsed()) return cmd_run(run_config, run_out, run_cache, run_dump);
  if (pelt->parsed()) return cmd_pelt(pelt_means, pelt_penalty, pelt_out);
  if (report->parsed()) return cmd_report(report_glob, report_txt, report_csv);
  return 2;
}
