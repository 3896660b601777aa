#pragma once

#include <cstddef>
#include <span>

namespace driftscape {

// Contiguous block of training samples (count x dim, row-major floats).
struct FloatWindow {
  const float* data = nullptr;
  std::size_t count = 0;
  std::size_t dim = 0;

  std::span<const float> sample(std::size_t i) const {
    return {data + i * dim, dim};
  }
};

// Detector-visible view of a stream: sample vectors only. Labels and other
// evaluation metadata are deliberately not reachable through this interface.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::size_t size() const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::span<const float> sample(std::size_t i) const = 0;
};

}  // namespace driftscape
