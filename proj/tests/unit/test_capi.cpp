#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "common/fixtures.hpp"
#include "driftscape.h"
#include "driftscape/csv.hpp"

namespace {

int run_cli(const std::string& args) {
  const std::string command = std::string(DRIFTSCAPE_CLI_PATH) + " " + args +
                              " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("version and error text are always available") {
  CHECK(std::string(ds_version()) == "0.1.0");
  CHECK(ds_last_error() != nullptr);
}

TEST_CASE("config handles reject unknown keys with DS_ERR_CONFIG") {
  ds_config* config = nullptr;
  REQUIRE(ds_config_create(&config) == DS_OK);
  CHECK(ds_config_set(config, "chunk_size", "100") == DS_OK);
  CHECK(ds_config_set(config, "definitely_not_a_key", "1") == DS_ERR_CONFIG);
  CHECK(std::string(ds_last_error()).find("definitely_not_a_key") != std::string::npos);
  ds_config_destroy(config);
}

TEST_CASE("a missing digit pool is a data error") {
  ds_mnist* pool = nullptr;
  CHECK(ds_mnist_open("/definitely/not/here", &pool) == DS_ERR_DATA);
  CHECK(pool == nullptr);
}

TEST_CASE("end-to-end flow through the C API") {
  const std::string dir = fixtures::make_temp_dir("capi");
  const std::string stream_path = dir + "/a.bin";

  ds_mnist* pool = nullptr;
  REQUIRE(ds_mnist_open(fixtures::mnist_dir().c_str(), &pool) == DS_OK);
  CHECK(ds_mnist_count(pool) == 10000);

  ds_stream* stream = nullptr;
  REQUIRE(ds_stream_generate(pool, "A", 3, &stream) == DS_OK);
  CHECK(ds_stream_length(stream) == 20000);
  REQUIRE(ds_stream_write(stream, stream_path.c_str(), nullptr) == DS_OK);
  ds_stream_close(stream);
  ds_mnist_close(pool);

  ds_stream* reloaded = nullptr;
  REQUIRE(ds_stream_open(stream_path.c_str(), nullptr, &reloaded) == DS_OK);
  CHECK(ds_stream_length(reloaded) == 20000);
  ds_stream_close(reloaded);

  ds_config* config = nullptr;
  REQUIRE(ds_config_create(&config) == DS_OK);
  const std::string out_dir = dir + "/out";
  CHECK(ds_config_set(config, "case", stream_path.c_str()) == DS_OK);
  CHECK(ds_config_set(config, "projector", "SOM") == DS_OK);
  CHECK(ds_config_set(config, "chunk_size", "500") == DS_OK);
  CHECK(ds_config_set(config, "grid_rows", "4") == DS_OK);
  CHECK(ds_config_set(config, "grid_cols", "4") == DS_OK);
  CHECK(ds_config_set(config, "som_epochs", "1") == DS_OK);
  CHECK(ds_config_set(config, "seed", "3") == DS_OK);
  CHECK(ds_config_set(config, "out_dir", out_dir.c_str()) == DS_OK);

  ds_report* report = nullptr;
  REQUIRE(ds_run(config, &report) == DS_OK);
  ds_config_destroy(config);
  REQUIRE(report != nullptr);
  CHECK(ds_report_value(report, "n_chunks") == 32.0);
  CHECK(ds_report_value(report, "n_records") == 31.0);
  CHECK(ds_report_value(report, "flags05") <= ds_report_value(report, "flags10"));
  CHECK(std::isnan(ds_report_value(report, "nonsense")));
  CHECK(std::string(ds_report_text(report)).find("drift run summary") !=
        std::string::npos);
  ds_report_destroy(report);

  size_t* breakpoints = nullptr;
  size_t count = 0;
  REQUIRE(ds_pelt_csv((out_dir + "/means.csv").c_str(), 0.0,
                      (dir + "/pelt.csv").c_str(), &breakpoints, &count) == DS_OK);
  std::free(breakpoints);
  CHECK(std::filesystem::exists(dir + "/pelt.csv"));

  const std::string report_path = out_dir + "/report.csv";
  const char* paths[] = {report_path.c_str()};
  REQUIRE(ds_report_table(paths, 1, (dir + "/table.txt").c_str(),
                          (dir + "/table.csv").c_str()) == DS_OK);
  const std::string table = driftscape::read_text_file(dir + "/table.csv");
  CHECK(table.find("SOM") != std::string::npos);

  std::filesystem::remove_all(dir);
}

TEST_CASE("cli drives the full workflow with documented exit codes") {
  const std::string dir = fixtures::make_temp_dir("cli");
  const std::string stream_path = dir + "/c.bin";

  CHECK(run_cli("--version") == 0);
  CHECK(run_cli("generate --case C --mnist " + fixtures::mnist_dir() + " --seed 5 --out " +
                stream_path) == 0);
  REQUIRE(std::filesystem::exists(stream_path));
  REQUIRE(std::filesystem::exists(stream_path + ".json"));

  const std::string config_path = dir + "/run.cfg";
  driftscape::write_text_file(config_path,
                              "case = " + stream_path + "\n" +
                                  "projector = SOM\n"
                                  "chunk_size = 500\n"
                                  "grid_rows = 4\n"
                                  "grid_cols = 4\n"
                                  "som_epochs = 1\n"
                                  "seed = 5\n"
                                  "out_dir = " + dir + "/out\n");
  CHECK(run_cli("run --config " + config_path + " --model-cache " + dir + "/model.bin") == 0);
  CHECK(std::filesystem::exists(dir + "/out/results.csv"));
  CHECK(std::filesystem::exists(dir + "/out/means.csv"));
  CHECK(std::filesystem::exists(dir + "/out/report.txt"));
  CHECK(std::filesystem::exists(dir + "/model.bin"));

  CHECK(run_cli("pelt --means " + dir + "/out/means.csv --out " + dir + "/pelt.csv") == 0);
  CHECK(std::filesystem::exists(dir + "/pelt.csv"));

  CHECK(run_cli("report --glob '" + dir + "/out/report.csv' --out-csv " + dir +
                "/table.csv") == 0);
  CHECK(std::filesystem::exists(dir + "/table.csv"));

  // Documented failure modes: 2 for config problems, 3 for data problems.
  CHECK(run_cli("run --config " + dir + "/missing.cfg") == 2);
  CHECK(run_cli("generate --case C --mnist /nope --seed 1 --out " + dir + "/x.bin") == 3);
  CHECK(run_cli("report --glob '" + dir + "/no_match_*.csv'") == 3);
  CHECK(run_cli("frobnicate") == 2);

  std::filesystem::remove_all(dir);
}
