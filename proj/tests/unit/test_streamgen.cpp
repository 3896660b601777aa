#include <doctest.h>

#include <filesystem>
#include <set>

#include "common/fixtures.hpp"
#include "driftscape/csv.hpp"
#include "driftscape/error.hpp"
#include "driftscape/streamgen.hpp"

using namespace driftscape;

TEST_CASE("case A injects 19 internal boundaries over 20 segments") {
  const AnnotatedStream stream = generate_stream(
      CaseSpec::builtin("A"), fixtures::digit_index(), fixtures::image_set(), 1);
  CHECK(stream.size() == 20000);
  REQUIRE(stream.annotation.boundaries.size() == 19);
  for (std::size_t i = 0; i < 19; ++i) {
    CHECK(stream.annotation.boundaries[i] == (i + 1) * 1000);
  }
  CHECK(stream.annotation.segment_groups.size() == 20);
}

TEST_CASE("case C cycles three groups over 40 segments of 500") {
  const AnnotatedStream stream = generate_stream(
      CaseSpec::builtin("C"), fixtures::digit_index(), fixtures::image_set(), 1);
  REQUIRE(stream.annotation.segment_groups.size() == 40);
  CHECK(stream.annotation.boundaries.size() == 39);
  CHECK(stream.annotation.segment_len == 500);
  for (std::size_t s = 0; s < 40; ++s) {
    CHECK(stream.annotation.segment_groups[s] == static_cast<int>(s % 3));
    if (s > 0) {
      CHECK(stream.annotation.segment_groups[s] !=
            stream.annotation.segment_groups[s - 1]);
    }
  }
}

TEST_CASE("every segment's labels stay inside its group") {
  for (const char* name : {"A", "B", "C"}) {
    const CaseSpec spec = CaseSpec::builtin(name);
    const AnnotatedStream stream = generate_stream(spec, fixtures::digit_index(),
                                                   fixtures::image_set(), 99);
    const std::size_t segments = spec.total_len / spec.segment_len;
    for (std::size_t s = 0; s < segments; ++s) {
      const auto& group = spec.group_cycle[s % spec.group_cycle.size()];
      const std::set<int> allowed(group.begin(), group.end());
      for (std::size_t i = s * spec.segment_len; i < (s + 1) * spec.segment_len; ++i) {
        REQUIRE(allowed.count(stream.sample_labels[i]) == 1);
      }
    }
  }
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
  const CaseSpec spec = CaseSpec::builtin("B");
  const AnnotatedStream a = generate_stream(spec, fixtures::digit_index(),
                                            fixtures::image_set(), 5);
  const AnnotatedStream b = generate_stream(spec, fixtures::digit_index(),
                                            fixtures::image_set(), 5);
  CHECK(a.samples == b.samples);
  CHECK(a.sample_labels == b.sample_labels);

  const AnnotatedStream c = generate_stream(spec, fixtures::digit_index(),
                                            fixtures::image_set(), 6);
  CHECK(a.samples != c.samples);
}

TEST_CASE("pooled sampling also stays inside the active group") {
  const CaseSpec spec = CaseSpec::builtin("A");
  const AnnotatedStream stream =
      generate_stream(spec, fixtures::digit_index(), fixtures::image_set(), 3,
                      GroupSampling::PooledUniform);
  const std::size_t segments = spec.total_len / spec.segment_len;
  for (std::size_t s = 0; s < segments; ++s) {
    const auto& group = spec.group_cycle[s % spec.group_cycle.size()];
    const std::set<int> allowed(group.begin(), group.end());
    for (std::size_t i = s * spec.segment_len; i < (s + 1) * spec.segment_len;
         i += 37) {
      REQUIRE(allowed.count(stream.sample_labels[i]) == 1);
    }
  }
  // Pooled draws differ from class-balanced draws for the same seed.
  const AnnotatedStream balanced =
      generate_stream(spec, fixtures::digit_index(), fixtures::image_set(), 3);
  CHECK(stream.samples != balanced.samples);
}

TEST_CASE("generate_stream reports an empty required class") {
  const ImageSet& set = fixtures::image_set();
  DigitIndex index = fixtures::digit_index();
  index.by_class[8].clear();
  try {
    generate_stream(CaseSpec::builtin("C"), index, set, 1);
    FAIL("expected EmptyClass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyClass);
  }
}

TEST_CASE("chunking arithmetic") {
  StreamAnnotation annotation;
  annotation.total_len = 20000;
  annotation.segment_len = 500;
  for (std::size_t b = 500; b < 20000; b += 500) annotation.boundaries.push_back(b);

  SUBCASE("64 chunks of 250 after a 4000-sample warm-up") {
    const auto chunks = make_chunks(20000, annotation, 250, 4000);
    REQUIRE(chunks.size() == 64);
    CHECK(chunks.front().begin == 4000);
    CHECK(chunks.back().end == 20000);
  }
  SUBCASE("every 5th chunk of 100 left-aligns with a 500-boundary") {
    const auto chunks = make_chunks(20000, annotation, 100, 4000);
    REQUIRE(chunks.size() == 160);
    for (const Chunk& c : chunks) {
      if (c.index % 5 == 0) {
        CHECK(c.begin % 500 == 0);
      } else {
        CHECK(c.begin % 500 != 0);
      }
    }
  }
  SUBCASE("chunk size equal to the stream yields a single chunk") {
    const auto chunks = make_chunks(20000, annotation, 20000, 0);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].begin == 0);
    CHECK(chunks[0].end == 20000);
    CHECK(chunks[0].has_boundary);
  }
  SUBCASE("trailing partial chunk is dropped") {
    const auto chunks = make_chunks(1000, annotation, 300, 0);
    CHECK(chunks.size() == 3);
  }
  SUBCASE("boundary flags cover inside and left edge") {
    const auto chunks = make_chunks(20000, annotation, 250, 4000);
    // 500-boundaries alternate: at the left edge of even chunks, absent in odd.
    CHECK(chunks[0].has_boundary);   // 4000 at left edge
    CHECK(!chunks[1].has_boundary);  // [4250, 4500) holds none
    CHECK(chunks[2].has_boundary);   // 4500 at left edge
    const auto wide = make_chunks(20000, annotation, 400, 4000);
    CHECK(wide[0].has_boundary);  // 4000 at edge, 4500 not reached? [4000,4400)
    CHECK(wide[1].has_boundary);  // 4500 inside [4400, 4800)
  }
}

TEST_CASE("stream container round-trips bytes and annotation") {
  const CaseSpec spec = CaseSpec::builtin("C");
  const AnnotatedStream stream = generate_stream(spec, fixtures::digit_index(),
                                                 fixtures::image_set(), 11);
  const std::string dir = fixtures::make_temp_dir("stream");
  const std::string data = dir + "/stream.bin";
  const std::string sidecar = dir + "/stream.bin.json";
  save_stream(stream, data, sidecar);
  const AnnotatedStream loaded = load_stream(data, sidecar);

  CHECK(loaded.case_name == stream.case_name);
  CHECK(loaded.seed == stream.seed);
  CHECK(loaded.dim == stream.dim);
  CHECK(loaded.samples == stream.samples);
  CHECK(loaded.sample_labels == stream.sample_labels);
  CHECK(loaded.annotation.boundaries == stream.annotation.boundaries);
  CHECK(loaded.annotation.segment_groups == stream.annotation.segment_groups);
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_stream rejects foreign files") {
  const std::string dir = fixtures::make_temp_dir("badstream");
  const std::string path = dir + "/not_a_stream.bin";
  write_text_file(path, "definitely not a stream container");
  try {
    load_stream(path, path + ".json");
    FAIL("expected WrongMagic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongMagic);
  }
  std::filesystem::remove_all(dir);
}
