#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace driftscape {

// Images parsed from one IDX image file: row-major flat pixel storage, each
// byte mapped to [0, 1].
struct RawImages {
  std::size_t count = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> pixels;

  std::size_t dim() const { return rows * cols; }
  std::span<const float> image(std::size_t i) const {
    return {pixels.data() + i * dim(), dim()};
  }
};

// A labeled pool of flat image vectors. Immutable after construction and safe
// to share across threads.
struct ImageSet {
  std::size_t dim = 0;
  std::vector<float> pixels;          // size() * dim values in [0, 1]
  std::vector<std::uint8_t> labels;   // digit classes 0..9
  std::uint64_t source_digest = 0;    // content hash of the input files

  std::size_t size() const { return labels.size(); }
  std::span<const float> image(std::size_t i) const {
    return {pixels.data() + i * dim, dim};
  }
};

// Sample indices grouped by digit class; the lists partition 0..size().
struct DigitIndex {
  std::array<std::vector<std::uint32_t>, 10> by_class;
};

/// Parses an IDX image file (big-endian magic 2051, counts, unsigned bytes).
RawImages parse_idx_images(std::span<const std::uint8_t> bytes);

/// Parses an IDX label file (big-endian magic 2049, count, bytes <= 9).
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_idx_images(const RawImages& images);
std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels);

ImageSet make_image_set(RawImages images, std::vector<std::uint8_t> labels,
                        std::uint64_t source_digest);

DigitIndex build_digit_index(const ImageSet& set);

// Loads the standard 4-file layout (train-images-idx3-ubyte, train-labels-...,
// t10k-...) from a directory, transparently decompressing gzip members, and
// concatenates train and test into one pool. Files may carry a .gz suffix.
ImageSet load_mnist_dir(const std::string& dir);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
bool looks_gzipped(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes);
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t basis = 1469598103934665603ull);

}  // namespace driftscape
