#pragma once

#include <string>

#include "driftscape/mnist.hpp"

namespace fixtures {

std::string testdata_dir();
std::string mnist_dir();

// Digit pool loaded once per process from the checked-in fixture files.
const driftscape::ImageSet& image_set();
const driftscape::DigitIndex& digit_index();

// Fresh temporary directory under the system temp path.
std::string make_temp_dir(const std::string& hint);

}  // namespace fixtures
