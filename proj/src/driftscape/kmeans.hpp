#pragma once

#include <cstdint>
#include <vector>

#include "driftscape/linalg.hpp"

namespace driftscape {

// Cluster representatives in the comparison space: SOM codebooks in input
// space, or k-means centers in the latent space of PCA / kernel PCA.
struct CentroidSet {
  Matrix centroids;  // K x space_dim
  std::size_t k() const { return centroids.rows; }
};

// Lloyd's algorithm with k-means++ seeding. Assignment ties break to the
// lowest centroid index; the loop stops when assignments are stable or after
// 300 iterations; a cluster left empty is re-seeded to the point farthest
// from its assigned centroid. Deterministic given the seed.
// objective_trace, when given, records sum of squared distances after each
// assignment pass.
CentroidSet kmeans_fit(const Matrix& points, std::size_t k, std::uint64_t seed,
                       std::vector<double>* objective_trace = nullptr);

}  // namespace driftscape
