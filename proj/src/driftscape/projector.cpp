#include "driftscape/projector.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "driftscape/error.hpp"

namespace driftscape {

const char* projector_name(ProjectorKind kind) {
  switch (kind) {
    case ProjectorKind::Som: return "SOM";
    case ProjectorKind::Pca: return "PCA";
    case ProjectorKind::Kpca: return "KPCA";
  }
  return "?";
}

std::optional<ProjectorKind> projector_from_name(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "SOM") return ProjectorKind::Som;
  if (upper == "PCA") return ProjectorKind::Pca;
  if (upper == "KPCA" || upper == "KERNELPCA" || upper == "KERNEL-PCA") {
    return ProjectorKind::Kpca;
  }
  return std::nullopt;
}

ProjectorKind kind_of(const ProjectorModel& model) {
  if (std::holds_alternative<SomModel>(model)) return ProjectorKind::Som;
  if (std::holds_alternative<PcaModel>(model)) return ProjectorKind::Pca;
  return ProjectorKind::Kpca;
}

std::size_t input_dim(const ProjectorModel& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SomModel>) return m.dim;
        if constexpr (std::is_same_v<T, PcaModel>) return m.mean.size();
        if constexpr (std::is_same_v<T, KpcaModel>) return m.train.cols;
      },
      model);
}

std::size_t latent_dim(const ProjectorModel& model) {
  return std::visit(
      [](const auto& m) -> std::size_t {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SomModel>) return 2;
        if constexpr (std::is_same_v<T, PcaModel>) return m.components.rows;
        if constexpr (std::is_same_v<T, KpcaModel>) return m.alphas.rows;
      },
      model);
}

std::vector<double> project(const ProjectorModel& model, std::span<const float> x) {
  return std::visit(
      [&](const auto& m) -> std::vector<double> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SomModel>) {
          const auto pos = m.position(som_bmu(m, x));
          return {pos[0], pos[1]};
        }
        if constexpr (std::is_same_v<T, PcaModel>) return pca_project(m, x);
        if constexpr (std::is_same_v<T, KpcaModel>) return kpca_project(m, x);
      },
      model);
}

Matrix distance_columns(const Matrix& points, const Matrix& centroids) {
  if (points.cols != centroids.cols) {
    raise(ErrorCode::DimensionMismatch, "distance_columns: space dimension mismatch");
  }
  Matrix out(centroids.rows, points.rows);
  for (std::size_t j = 0; j < points.rows; ++j) {
    const auto p = points.row(j);
    for (std::size_t i = 0; i < centroids.rows; ++i) {
      out(i, j) = std::sqrt(squared_distance(p, centroids.row(i)));
    }
  }
  return out;
}

DistanceDescriptor centroid_distances(const ProjectorModel& model,
                                      const CentroidSet& centroids,
                                      const SampleSource& source,
                                      const Chunk& chunk) {
  const std::size_t chunk_size = chunk.end - chunk.begin;
  DistanceDescriptor descriptor;
  descriptor.chunk_index = chunk.index;
  descriptor.matrix = Matrix(centroids.k(), chunk_size);

  if (kind_of(model) == ProjectorKind::Som) {
    // SOM codebooks live in input space; compare raw samples directly.
    const auto& som = std::get<SomModel>(model);
    if (centroids.centroids.cols != som.dim) {
      raise(ErrorCode::DimensionMismatch,
            "centroid_distances: centroids do not match the SOM input space");
    }
    for (std::size_t j = 0; j < chunk_size; ++j) {
      const auto x = source.sample(chunk.begin + j);
      if (x.size() != som.dim) {
        raise(ErrorCode::DimensionMismatch, "centroid_distances: sample dimension");
      }
      for (std::size_t i = 0; i < centroids.k(); ++i) {
        descriptor.matrix(i, j) =
            std::sqrt(squared_distance(x, centroids.centroids.row(i)));
      }
    }
    return descriptor;
  }

  if (centroids.centroids.cols != latent_dim(model)) {
    raise(ErrorCode::DimensionMismatch,
          "centroid_distances: centroids do not match the latent space");
  }
  for (std::size_t j = 0; j < chunk_size; ++j) {
    const std::vector<double> y = project(model, source.sample(chunk.begin + j));
    for (std::size_t i = 0; i < centroids.k(); ++i) {
      descriptor.matrix(i, j) =
          std::sqrt(squared_distance(std::span<const double>(y), centroids.centroids.row(i)));
    }
  }
  return descriptor;
}

namespace {

constexpr char kModelMagic[8] = {'D', 'S', 'M', 'O', 'D', 'E', 'L', '1'};

void put_u64(std::ofstream& out, std::uint64_t v) {
  std::uint8_t b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::ifstream& in) {
  std::uint8_t b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ofstream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

double get_f64(std::ifstream& in) {
  const std::uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void put_matrix(std::ofstream& out, const Matrix& m) {
  put_u64(out, m.rows);
  put_u64(out, m.cols);
  for (double v : m.data) put_f64(out, v);
}

Matrix get_matrix(std::ifstream& in) {
  const std::uint64_t rows = get_u64(in);
  const std::uint64_t cols = get_u64(in);
  Matrix m(rows, cols);
  for (double& v : m.data) v = get_f64(in);
  return m;
}

void put_vector(std::ofstream& out, const std::vector<double>& v) {
  put_u64(out, v.size());
  for (double x : v) put_f64(out, x);
}

std::vector<double> get_vector(std::ifstream& in) {
  std::vector<double> v(get_u64(in));
  for (double& x : v) x = get_f64(in);
  return v;
}

}  // namespace

void save_fitted(const std::string& path, const FittedProjector& fitted,
                 std::uint64_t cache_key) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot open model cache for writing: " + path);
  out.write(kModelMagic, sizeof(kModelMagic));
  put_u64(out, static_cast<std::uint64_t>(kind_of(fitted.model)));
  put_u64(out, cache_key);

  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SomModel>) {
          put_u64(out, m.rows);
          put_u64(out, m.cols);
          put_u64(out, m.dim);
          put_f64(out, m.params.alpha0);
          put_f64(out, m.params.sigma0);
          put_f64(out, m.params.sigma_min);
          put_u64(out, m.params.epochs);
          put_matrix(out, m.codebooks);
        } else if constexpr (std::is_same_v<T, PcaModel>) {
          put_vector(out, m.mean);
          put_matrix(out, m.components);
          put_vector(out, m.eigenvalues);
        } else {
          put_f64(out, m.gamma);
          put_f64(out, m.grand_mean);
          put_matrix(out, m.train);
          put_matrix(out, m.alphas);
          put_vector(out, m.row_means);
          put_vector(out, m.eigenvalues);
          put_matrix(out, m.training_latents);
        }
      },
      fitted.model);
  put_matrix(out, fitted.centroids.centroids);
  if (!out.good()) raise(ErrorCode::IoError, "write failed: " + path);
}

std::optional<FittedProjector> load_fitted(const std::string& path,
                                           std::uint64_t cache_key) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in.good() || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    return std::nullopt;
  }
  const std::uint64_t kind = get_u64(in);
  const std::uint64_t stored_key = get_u64(in);
  if (stored_key != cache_key) return std::nullopt;

  FittedProjector fitted;
  switch (static_cast<ProjectorKind>(kind)) {
    case ProjectorKind::Som: {
      SomModel m;
      m.rows = get_u64(in);
      m.cols = get_u64(in);
      m.dim = get_u64(in);
      m.params.alpha0 = get_f64(in);
      m.params.sigma0 = get_f64(in);
      m.params.sigma_min = get_f64(in);
      m.params.epochs = get_u64(in);
      m.codebooks = get_matrix(in);
      fitted.model = std::move(m);
      break;
    }
    case ProjectorKind::Pca: {
      PcaModel m;
      m.mean = get_vector(in);
      m.components = get_matrix(in);
      m.eigenvalues = get_vector(in);
      fitted.model = std::move(m);
      break;
    }
    case ProjectorKind::Kpca: {
      KpcaModel m;
      m.gamma = get_f64(in);
      m.grand_mean = get_f64(in);
      m.train = get_matrix(in);
      m.alphas = get_matrix(in);
      m.row_means = get_vector(in);
      m.eigenvalues = get_vector(in);
      m.training_latents = get_matrix(in);
      fitted.model = std::move(m);
      break;
    }
    default:
      return std::nullopt;
  }
  fitted.centroids.centroids = get_matrix(in);
  if (!in.good()) return std::nullopt;
  return fitted;
}

}  // namespace driftscape
