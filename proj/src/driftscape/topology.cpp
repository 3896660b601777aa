#include "driftscape/topology.hpp"

#include <algorithm>
#include <cmath>

#include "driftscape/error.hpp"

namespace driftscape {

PersistenceDiagram h0_diagram(std::span<const double> values) {
  if (values.size() < 2) {
    raise(ErrorCode::TooFewValues,
          "H0 diagram needs at least 2 values, got " + std::to_string(values.size()));
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  PersistenceDiagram diagram;
  diagram.lifetimes.reserve(sorted.size() - 1);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const double gap = sorted[i] - sorted[i - 1];
    if (gap > 0.0) diagram.lifetimes.push_back(gap);
  }
  return diagram;
}

double persistent_entropy(const PersistenceDiagram& diagram) {
  if (diagram.lifetimes.size() < 2) return 0.0;
  double total = 0.0;
  for (double l : diagram.lifetimes) total += l;
  if (total <= 0.0) return 0.0;
  double entropy = 0.0;
  for (double l : diagram.lifetimes) {
    const double p = l / total;
    entropy -= p * std::log(p);
  }
  return entropy;
}

PeVector chunk_pe(const DistanceDescriptor& descriptor,
                  std::vector<PersistenceDiagram>* out_diagrams) {
  const Matrix& m = descriptor.matrix;
  if (m.rows < 2) {
    raise(ErrorCode::TooFewValues, "descriptor needs at least 2 centroid rows");
  }
  PeVector pe;
  pe.chunk_index = descriptor.chunk_index;
  pe.values.resize(m.cols);
  if (out_diagrams) out_diagrams->resize(m.cols);

  std::vector<double> column(m.rows);
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) column[i] = m(i, j);
    PersistenceDiagram diagram = h0_diagram(column);
    pe.values[j] = persistent_entropy(diagram);
    if (out_diagrams) (*out_diagrams)[j] = std::move(diagram);
  }
  return pe;
}

}  // namespace driftscape
