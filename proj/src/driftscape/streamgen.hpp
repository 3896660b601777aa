#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "driftscape/mnist.hpp"

namespace driftscape {

// Blueprint for one synthetic stream: an ordered cycle of digit groups, the
// samples per segment, and the stream length.
struct CaseSpec {
  std::string name;
  std::vector<std::vector<int>> group_cycle;
  std::size_t segment_len = 0;
  std::size_t total_len = 0;

  static bool is_builtin(std::string_view name);
  // The three canned scenarios:
  //   A: {1,3,5,7} vs {0,6,9},        1000-sample segments, 20000 samples
  //   B: {1,2,3,5,7} vs {0,4,6,9},    1000-sample segments, 20000 samples
  //   C: {1,2,3,5,7}, {8}, {0,4,6,9},  500-sample segments, 20000 samples
  static CaseSpec builtin(std::string_view name);
};

// Ground truth attached to a generated stream: where the active group changes
// and which cycle entry each segment uses. Consumed only by evaluation.
struct StreamAnnotation {
  std::size_t total_len = 0;
  std::size_t segment_len = 0;
  std::vector<std::size_t> boundaries;   // multiples of segment_len in (0, total)
  std::vector<int> segment_groups;       // cycle index per segment
  std::vector<std::vector<int>> group_cycle;
};

struct AnnotatedStream {
  std::string case_name;
  std::uint64_t seed = 0;
  std::size_t dim = 0;
  std::vector<float> samples;             // size() * dim
  std::vector<std::uint8_t> sample_labels;  // evaluation only, never read by the detector
  StreamAnnotation annotation;

  std::size_t size() const { return dim ? samples.size() / dim : 0; }
  std::span<const float> sample(std::size_t i) const {
    return {samples.data() + i * dim, dim};
  }
};

enum class GroupSampling {
  ClassUniform,   // uniform digit class within the group, then uniform image
  PooledUniform,  // uniform over the union of the group's images
};

/// Draws total_len samples segment by segment, with replacement, deterministic
/// given the seed.
AnnotatedStream generate_stream(const CaseSpec& spec, const DigitIndex& index,
                                const ImageSet& set, std::uint64_t seed,
                                GroupSampling sampling = GroupSampling::ClassUniform);

// One processing window of the stream. has_boundary is true when an annotated
// boundary lies in [begin, end) -- i.e. inside the chunk or at its left edge.
struct Chunk {
  std::size_t index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool has_boundary = false;
};

/// Consecutive non-overlapping chunks starting at start_offset; a trailing
/// partial chunk is dropped.
std::vector<Chunk> make_chunks(std::size_t total_len,
                               const StreamAnnotation& annotation,
                               std::size_t chunk_size, std::size_t start_offset);

inline std::vector<Chunk> make_chunks(const AnnotatedStream& stream,
                                      std::size_t chunk_size,
                                      std::size_t start_offset) {
  return make_chunks(stream.size(), stream.annotation, chunk_size, start_offset);
}

// Binary container (f32 little-endian vectors) plus a JSON sidecar carrying
// the annotation and per-sample labels.
void save_stream(const AnnotatedStream& stream, const std::string& data_path,
                 const std::string& sidecar_path);
AnnotatedStream load_stream(const std::string& data_path,
                            const std::string& sidecar_path);

}  // namespace driftscape
