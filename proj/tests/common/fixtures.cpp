#include "common/fixtures.hpp"

#include <unistd.h>

#include <atomic>
#include <filesystem>

namespace fixtures {

std::string testdata_dir() { return DRIFTSCAPE_TESTDATA_DIR; }

std::string mnist_dir() { return testdata_dir() + "/mnist"; }

const driftscape::ImageSet& image_set() {
  static const driftscape::ImageSet set = driftscape::load_mnist_dir(mnist_dir());
  return set;
}

const driftscape::DigitIndex& digit_index() {
  static const driftscape::DigitIndex index =
      driftscape::build_digit_index(image_set());
  return index;
}

std::string make_temp_dir(const std::string& hint) {
  static std::atomic<unsigned> counter{0};
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() /
                        ("driftscape_test_" + hint + "_" +
                         std::to_string(::getpid()) + "_" +
                         std::to_string(counter.fetch_add(1)));
  fs::create_directories(base);
  return base.string();
}

}  // namespace fixtures
