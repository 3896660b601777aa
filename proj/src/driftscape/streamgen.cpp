#include "driftscape/streamgen.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "driftscape/error.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

namespace {

constexpr char kStreamMagic[8] = {'D', 'S', 'S', 'T', 'R', 'M', '0', '1'};

void put_u32(std::ofstream& out, std::uint32_t v) {
  const std::uint8_t b[4] = {
      static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
      static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

std::uint32_t get_u32(std::ifstream& in) {
  std::uint8_t b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::ifstream& in) {
  const std::uint64_t lo = get_u32(in);
  const std::uint64_t hi = get_u32(in);
  return lo | (hi << 32);
}

}  // namespace

bool CaseSpec::is_builtin(std::string_view name) {
  return name == "A" || name == "B" || name == "C";
}

CaseSpec CaseSpec::builtin(std::string_view name) {
  CaseSpec spec;
  spec.name = std::string(name);
  spec.total_len = 20000;
  if (name == "A") {
    spec.group_cycle = {{1, 3, 5, 7}, {0, 6, 9}};
    spec.segment_len = 1000;
  } else if (name == "B") {
    spec.group_cycle = {{1, 2, 3, 5, 7}, {0, 4, 6, 9}};
    spec.segment_len = 1000;
  } else if (name == "C") {
    spec.group_cycle = {{1, 2, 3, 5, 7}, {8}, {0, 4, 6, 9}};
    spec.segment_len = 500;
  } else {
    raise(ErrorCode::ConfigInvalid, "unknown case name: " + std::string(name));
  }
  return spec;
}

AnnotatedStream generate_stream(const CaseSpec& spec, const DigitIndex& index,
                                const ImageSet& set, std::uint64_t seed,
                                GroupSampling sampling) {
  if (spec.segment_len == 0 || spec.total_len == 0 ||
      spec.total_len % spec.segment_len != 0) {
    raise(ErrorCode::ConfigInvalid,
          "total_len must be a positive multiple of segment_len");
  }
  if (spec.group_cycle.empty()) {
    raise(ErrorCode::ConfigInvalid, "group cycle must not be empty");
  }
  for (const auto& group : spec.group_cycle) {
    for (int digit : group) {
      if (digit < 0 || digit > 9) {
        raise(ErrorCode::ConfigInvalid, "digit class out of range in group cycle");
      }
      if (index.by_class[digit].empty()) {
        raise(ErrorCode::EmptyClass,
              "digit class " + std::to_string(digit) + " has no samples");
      }
    }
  }

  // Pooled index lists, built once per cycle entry.
  std::vector<std::vector<std::uint32_t>> pooled(spec.group_cycle.size());
  if (sampling == GroupSampling::PooledUniform) {
    for (std::size_t g = 0; g < spec.group_cycle.size(); ++g) {
      for (int digit : spec.group_cycle[g]) {
        const auto& ids = index.by_class[digit];
        pooled[g].insert(pooled[g].end(), ids.begin(), ids.end());
      }
    }
  }

  const std::size_t n_segments = spec.total_len / spec.segment_len;
  AnnotatedStream stream;
  stream.case_name = spec.name;
  stream.seed = seed;
  stream.dim = set.dim;
  stream.samples.reserve(spec.total_len * set.dim);
  stream.sample_labels.reserve(spec.total_len);
  stream.annotation.total_len = spec.total_len;
  stream.annotation.segment_len = spec.segment_len;
  stream.annotation.group_cycle = spec.group_cycle;

  Rng rng(seed);
  for (std::size_t s = 0; s < n_segments; ++s) {
    const std::size_t g = s % spec.group_cycle.size();
    stream.annotation.segment_groups.push_back(static_cast<int>(g));
    if (s > 0) stream.annotation.boundaries.push_back(s * spec.segment_len);

    const auto& group = spec.group_cycle[g];
    for (std::size_t i = 0; i < spec.segment_len; ++i) {
      std::uint32_t sample_index;
      if (sampling == GroupSampling::ClassUniform) {
        const int digit = group[rng.below(group.size())];
        const auto& ids = index.by_class[digit];
        sample_index = ids[rng.below(ids.size())];
      } else {
        sample_index = pooled[g][rng.below(pooled[g].size())];
      }
      const auto img = set.image(sample_index);
      stream.samples.insert(stream.samples.end(), img.begin(), img.end());
      stream.sample_labels.push_back(set.labels[sample_index]);
    }
  }
  return stream;
}

std::vector<Chunk> make_chunks(std::size_t total_len,
                               const StreamAnnotation& annotation,
                               std::size_t chunk_size, std::size_t start_offset) {
  std::vector<Chunk> chunks;
  if (chunk_size < 2 || start_offset >= total_len) return chunks;
  const auto& bs = annotation.boundaries;
  std::size_t begin = start_offset;
  std::size_t index = 0;
  while (begin + chunk_size <= total_len) {
    Chunk c;
    c.index = index++;
    c.begin = begin;
    c.end = begin + chunk_size;
    auto it = std::lower_bound(bs.begin(), bs.end(), c.begin);
    c.has_boundary = (it != bs.end() && *it < c.end);
    chunks.push_back(c);
    begin = c.end;
  }
  return chunks;
}

void save_stream(const AnnotatedStream& stream, const std::string& data_path,
                 const std::string& sidecar_path) {
  std::ofstream out(data_path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open stream file for writing: " + data_path);
  out.write(kStreamMagic, sizeof(kStreamMagic));
  put_u32(out, static_cast<std::uint32_t>(stream.case_name.size()));
  out.write(stream.case_name.data(),
            static_cast<std::streamsize>(stream.case_name.size()));
  put_u64(out, stream.seed);
  put_u64(out, stream.size());
  put_u64(out, stream.annotation.segment_len);
  put_u32(out, static_cast<std::uint32_t>(stream.dim));
  static_assert(std::endian::native == std::endian::little,
                "stream container writer assumes a little-endian host");
  out.write(reinterpret_cast<const char*>(stream.samples.data()),
            static_cast<std::streamsize>(stream.samples.size() * sizeof(float)));
  if (!out.good()) raise(ErrorCode::IoError, "write failed: " + data_path);
  out.close();

  nlohmann::json sidecar;
  sidecar["case"] = stream.case_name;
  sidecar["seed"] = stream.seed;
  sidecar["total_len"] = stream.annotation.total_len;
  sidecar["segment_len"] = stream.annotation.segment_len;
  sidecar["dim"] = stream.dim;
  sidecar["boundaries"] = stream.annotation.boundaries;
  sidecar["segment_groups"] = stream.annotation.segment_groups;
  sidecar["group_cycle"] = stream.annotation.group_cycle;
  sidecar["sample_labels"] = stream.sample_labels;
  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side) raise(ErrorCode::IoError, "cannot open sidecar for writing: " + sidecar_path);
  side << sidecar.dump(2) << '\n';
  if (!side.good()) raise(ErrorCode::IoError, "write failed: " + sidecar_path);
}

AnnotatedStream load_stream(const std::string& data_path,
                            const std::string& sidecar_path) {
  std::ifstream in(data_path, std::ios::binary);
  if (!in) raise(ErrorCode::IoError, "cannot open stream file: " + data_path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in.good() || std::memcmp(magic, kStreamMagic, sizeof(magic)) != 0) {
    raise(ErrorCode::WrongMagic, "not a stream container: " + data_path);
  }
  AnnotatedStream stream;
  const std::uint32_t name_len = get_u32(in);
  stream.case_name.resize(name_len);
  in.read(stream.case_name.data(), name_len);
  stream.seed = get_u64(in);
  const std::uint64_t total = get_u64(in);
  const std::uint64_t segment_len = get_u64(in);
  stream.dim = get_u32(in);
  if (!in.good() || stream.dim == 0) {
    raise(ErrorCode::TruncatedFile, "stream header truncated: " + data_path);
  }
  stream.samples.resize(total * stream.dim);
  static_assert(std::endian::native == std::endian::little,
                "stream container reader assumes a little-endian host");
  in.read(reinterpret_cast<char*>(stream.samples.data()),
          static_cast<std::streamsize>(stream.samples.size() * sizeof(float)));
  if (in.gcount() !=
      static_cast<std::streamsize>(stream.samples.size() * sizeof(float))) {
    raise(ErrorCode::TruncatedFile, "stream payload truncated: " + data_path);
  }

  std::ifstream side(sidecar_path, std::ios::binary);
  if (!side) raise(ErrorCode::IoError, "cannot open sidecar: " + sidecar_path);
  nlohmann::json sidecar;
  try {
    side >> sidecar;
    stream.annotation.total_len = sidecar.at("total_len").get<std::size_t>();
    stream.annotation.segment_len = sidecar.at("segment_len").get<std::size_t>();
    stream.annotation.boundaries =
        sidecar.at("boundaries").get<std::vector<std::size_t>>();
    stream.annotation.segment_groups =
        sidecar.at("segment_groups").get<std::vector<int>>();
    if (sidecar.contains("group_cycle")) {
      stream.annotation.group_cycle =
          sidecar.at("group_cycle").get<std::vector<std::vector<int>>>();
    }
    if (sidecar.contains("sample_labels")) {
      stream.sample_labels =
          sidecar.at("sample_labels").get<std::vector<std::uint8_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::IoError, "invalid sidecar " + sidecar_path + ": " + e.what());
  }
  if (stream.annotation.total_len != total) {
    raise(ErrorCode::TruncatedFile, "sidecar/container length mismatch");
  }
  if (segment_len != stream.annotation.segment_len) {
    raise(ErrorCode::TruncatedFile, "sidecar/container segment length mismatch");
  }
  return stream;
}

}  // namespace driftscape
