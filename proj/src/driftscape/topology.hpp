#pragma once

#include <span>
#include <vector>

#include "driftscape/linalg.hpp"

namespace driftscape {

// H0 persistence of a finite scalar set: all components are born at 0 and the
// finite death times are the adjacent gaps of the sorted values. Zero-length
// bars (duplicate values) and the single infinite bar are dropped, so only
// strictly positive lifetimes remain.
struct PersistenceDiagram {
  std::vector<double> lifetimes;
};

// Per-chunk distance descriptor: K centroid rows, one column per point.
// Column j holds the distances from projected point j to each centroid.
struct DistanceDescriptor {
  std::size_t chunk_index = 0;
  Matrix matrix;
};

// One persistent-entropy value per point of a chunk.
struct PeVector {
  std::size_t chunk_index = 0;
  std::vector<double> values;
};

/// H0 Vietoris-Rips persistence of K scalars on the real line.
PersistenceDiagram h0_diagram(std::span<const double> values);

/// Shannon entropy (nats) of the normalized lifetime distribution; empty and
/// single-bar diagrams give 0.
double persistent_entropy(const PersistenceDiagram& diagram);

/// Applies h0_diagram + persistent_entropy to every column of the descriptor.
/// When out_diagrams is non-null the per-point diagrams are captured as well.
PeVector chunk_pe(const DistanceDescriptor& descriptor,
                  std::vector<PersistenceDiagram>* out_diagrams = nullptr);

}  // namespace driftscape
