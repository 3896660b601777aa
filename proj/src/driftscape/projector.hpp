#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "driftscape/kmeans.hpp"
#include "driftscape/kpca.hpp"
#include "driftscape/pca.hpp"
#include "driftscape/som.hpp"
#include "driftscape/streamgen.hpp"
#include "driftscape/topology.hpp"
#include "driftscape/window.hpp"

namespace driftscape {

enum class ProjectorKind { Som, Pca, Kpca };

const char* projector_name(ProjectorKind kind);
std::optional<ProjectorKind> projector_from_name(std::string_view name);

using ProjectorModel = std::variant<SomModel, PcaModel, KpcaModel>;

ProjectorKind kind_of(const ProjectorModel& model);
std::size_t input_dim(const ProjectorModel& model);
std::size_t latent_dim(const ProjectorModel& model);

/// Latent representation of one input point: the BMU grid position for SOM,
/// the component/kernel projection for PCA and kernel PCA.
std::vector<double> project(const ProjectorModel& model, std::span<const float> x);

// Distance columns between points (rows of `points`) and centroids: entry
// (i, j) is the Euclidean distance from point j to centroid i.
Matrix distance_columns(const Matrix& points, const Matrix& centroids);

// Per-chunk descriptor. SOM compares raw samples against its codebooks in
// input space; PCA and kernel PCA compare projected points against the
// k-means centroids in latent space.
DistanceDescriptor centroid_distances(const ProjectorModel& model,
                                      const CentroidSet& centroids,
                                      const SampleSource& source,
                                      const Chunk& chunk);

// Versioned binary cache of a fitted model plus its centroid set
// (magic, kind, cache key, dims, little-endian 64-bit floats).
struct FittedProjector {
  ProjectorModel model;
  CentroidSet centroids;
};

void save_fitted(const std::string& path, const FittedProjector& fitted,
                 std::uint64_t cache_key);

/// Returns the cached fit when the file exists and its cache key matches.
std::optional<FittedProjector> load_fitted(const std::string& path,
                                           std::uint64_t cache_key);

}  // namespace driftscape
