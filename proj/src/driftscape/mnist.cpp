#include "driftscape/mnist.hpp"

#include <zlib.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "driftscape/error.hpp"

namespace driftscape {

namespace {

constexpr std::uint32_t kImageMagic = 2051;
constexpr std::uint32_t kLabelMagic = 2049;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

}  // namespace

RawImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16) {
    raise(ErrorCode::TruncatedFile, "IDX image header needs 16 bytes");
  }
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kImageMagic) {
    raise(ErrorCode::WrongMagic,
          "IDX image magic mismatch: got " + std::to_string(magic));
  }
  RawImages out;
  out.count = read_be32(bytes, 4);
  out.rows = read_be32(bytes, 8);
  out.cols = read_be32(bytes, 12);
  const std::size_t payload = out.count * out.rows * out.cols;
  if (bytes.size() < 16 + payload) {
    raise(ErrorCode::TruncatedFile,
          "IDX image payload truncated: expected " + std::to_string(payload) +
              " bytes, got " + std::to_string(bytes.size() - 16));
  }
  out.pixels.resize(payload);
  for (std::size_t i = 0; i < payload; ++i) {
    out.pixels[i] = static_cast<float>(bytes[16 + i]) / 255.0f;
  }
  return out;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8) {
    raise(ErrorCode::TruncatedFile, "IDX label header needs 8 bytes");
  }
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != kLabelMagic) {
    raise(ErrorCode::WrongMagic,
          "IDX label magic mismatch: got " + std::to_string(magic));
  }
  const std::size_t count = read_be32(bytes, 4);
  if (bytes.size() < 8 + count) {
    raise(ErrorCode::TruncatedFile,
          "IDX label payload truncated: expected " + std::to_string(count) +
              " bytes, got " + std::to_string(bytes.size() - 8));
  }
  std::vector<std::uint8_t> labels(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t v = bytes[8 + i];
    if (v > 9) {
      raise(ErrorCode::LabelOutOfRange,
            "label byte " + std::to_string(v) + " at index " + std::to_string(i));
    }
    labels[i] = v;
  }
  return labels;
}

std::vector<std::uint8_t> serialize_idx_images(const RawImages& images) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.pixels.size());
  append_be32(out, kImageMagic);
  append_be32(out, static_cast<std::uint32_t>(images.count));
  append_be32(out, static_cast<std::uint32_t>(images.rows));
  append_be32(out, static_cast<std::uint32_t>(images.cols));
  for (float v : images.pixels) {
    out.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0f)));
  }
  return out;
}

std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.size());
  append_be32(out, kLabelMagic);
  append_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

ImageSet make_image_set(RawImages images, std::vector<std::uint8_t> labels,
                        std::uint64_t source_digest) {
  if (images.count != labels.size()) {
    raise(ErrorCode::DimensionMismatch,
          "image/label count mismatch: " + std::to_string(images.count) + " vs " +
              std::to_string(labels.size()));
  }
  ImageSet set;
  set.dim = images.dim();
  set.pixels = std::move(images.pixels);
  set.labels = std::move(labels);
  set.source_digest = source_digest;
  return set;
}

DigitIndex build_digit_index(const ImageSet& set) {
  DigitIndex index;
  for (std::size_t i = 0; i < set.size(); ++i) {
    index.by_class[set.labels[i]].push_back(static_cast<std::uint32_t>(i));
  }
  return index;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open file: " + path);
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  return bytes;
}

bool looks_gzipped(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes) {
  z_stream zs{};
  if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
    raise(ErrorCode::IoError, "zlib inflateInit failed");
  }
  zs.next_in = const_cast<Bytef*>(bytes.data());
  zs.avail_in = static_cast<uInt>(bytes.size());

  std::vector<std::uint8_t> out;
  out.reserve(bytes.size() * 4);
  std::array<std::uint8_t, 64 * 1024> buf;
  int rc = Z_OK;
  do {
    zs.next_out = buf.data();
    zs.avail_out = static_cast<uInt>(buf.size());
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      raise(ErrorCode::IoError, "gzip decompression failed (zlib rc " +
                                    std::to_string(rc) + ")");
    }
    out.insert(out.end(), buf.data(), buf.data() + (buf.size() - zs.avail_out));
  } while (rc != Z_STREAM_END);
  inflateEnd(&zs);
  return out;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::vector<std::uint8_t> read_maybe_gz(const std::string& dir,
                                        const std::string& name,
                                        std::uint64_t& digest) {
  namespace fs = std::filesystem;
  std::string path = (fs::path(dir) / name).string();
  if (!fs::exists(path)) {
    const std::string gz = path + ".gz";
    if (fs::exists(gz)) {
      path = gz;
    } else {
      raise(ErrorCode::IoError, "missing MNIST file: " + path + " (or .gz)");
    }
  }
  std::vector<std::uint8_t> bytes = read_file_bytes(path);
  digest = fnv1a64(bytes, digest);
  if (looks_gzipped(bytes)) bytes = gunzip(bytes);
  return bytes;
}

}  // namespace

ImageSet load_mnist_dir(const std::string& dir) {
  std::uint64_t digest = 1469598103934665603ull;
  const auto train_images = read_maybe_gz(dir, "train-images-idx3-ubyte", digest);
  const auto train_labels = read_maybe_gz(dir, "train-labels-idx1-ubyte", digest);
  const auto test_images = read_maybe_gz(dir, "t10k-images-idx3-ubyte", digest);
  const auto test_labels = read_maybe_gz(dir, "t10k-labels-idx1-ubyte", digest);

  RawImages train = parse_idx_images(train_images);
  RawImages test = parse_idx_images(test_images);
  if (train.rows != test.rows || train.cols != test.cols) {
    raise(ErrorCode::DimensionMismatch, "train/test image dimensions differ");
  }
  std::vector<std::uint8_t> labels = parse_idx_labels(train_labels);
  const std::vector<std::uint8_t> tlabels = parse_idx_labels(test_labels);

  if (train.count != labels.size() || test.count != tlabels.size()) {
    raise(ErrorCode::DimensionMismatch, "image/label counts differ within a split");
  }

  train.pixels.insert(train.pixels.end(), test.pixels.begin(), test.pixels.end());
  train.count += test.count;
  labels.insert(labels.end(), tlabels.begin(), tlabels.end());
  return make_image_set(std::move(train), std::move(labels), digest);
}

}  // namespace driftscape
