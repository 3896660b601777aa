#pragma once

#include <string>
#include <vector>

namespace driftscape {

// Shortest-round-trip decimal rendering of a double (17 significant digits),
// used wherever output files must be byte-reproducible.
std::string format_double(double value);

// Naive comma split; none of the library's CSV files quote fields.
std::vector<std::string> split_csv_line(const std::string& line);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace driftscape
