#include "driftscape/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "driftscape/csv.hpp"
#include "driftscape/error.hpp"
#include "driftscape/rng.hpp"

namespace driftscape {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    raise(ErrorCode::ConfigInvalid, "config key '" + key + "': expected an integer, got '" + value + "'");
  }
}

double parse_f64(const std::string& key, const std::string& value) {
  try {
    return std::stod(value);
  } catch (const std::exception&) {
    raise(ErrorCode::ConfigInvalid, "config key '" + key + "': expected a number, got '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  raise(ErrorCode::ConfigInvalid, "config key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace

void apply_config_pair(RunConfig& config, const std::string& key,
                       const std::string& value) {
  if (key == "case") {
    config.case_name = value;
  } else if (key == "mnist") {
    config.mnist_dir = value;
  } else if (key == "annotation") {
    config.annotation_path = value;
  } else if (key == "projector") {
    const auto kind = projector_from_name(value);
    if (!kind) raise(ErrorCode::ConfigInvalid, "unknown projector: " + value);
    config.projector = *kind;
  } else if (key == "chunk_size") {
    config.chunk_size = parse_u64(key, value);
  } else if (key == "warmup_fraction") {
    config.warmup_fraction = parse_f64(key, value);
  } else if (key == "grid_rows") {
    config.grid_rows = parse_u64(key, value);
  } else if (key == "grid_cols") {
    config.grid_cols = parse_u64(key, value);
  } else if (key == "latent_dim") {
    config.latent_dim = parse_u64(key, value);
  } else if (key == "kmeans_k") {
    config.kmeans_k = parse_u64(key, value);
  } else if (key == "seed") {
    config.seed = parse_u64(key, value);
  } else if (key == "thresholds") {
    const auto comma = value.find(',');
    if (comma == std::string::npos) {
      raise(ErrorCode::ConfigInvalid, "thresholds: expected 'low,high'");
    }
    config.threshold_low = parse_f64(key, trim(value.substr(0, comma)));
    config.threshold_high = parse_f64(key, trim(value.substr(comma + 1)));
  } else if (key == "start_offset") {
    config.start_offset = parse_u64(key, value);
  } else if (key == "sampling") {
    if (value == "class_uniform") {
      config.sampling = GroupSampling::ClassUniform;
    } else if (value == "pooled") {
      config.sampling = GroupSampling::PooledUniform;
    } else {
      raise(ErrorCode::ConfigInvalid, "sampling: expected class_uniform or pooled");
    }
  } else if (key == "fixed_reference") {
    config.fixed_reference = parse_bool(key, value);
  } else if (key == "som_alpha0") {
    config.som.alpha0 = parse_f64(key, value);
  } else if (key == "som_sigma0") {
    config.som.sigma0 = parse_f64(key, value);
  } else if (key == "som_sigma_min") {
    config.som.sigma_min = parse_f64(key, value);
  } else if (key == "som_epochs") {
    config.som.epochs = parse_u64(key, value);
  } else if (key == "kpca_gamma") {
    config.kpca_gamma = parse_f64(key, value);
  } else if (key == "kpca_cap") {
    config.kpca_cap = parse_u64(key, value);
  } else if (key == "eval_tolerance_chunks") {
    config.eval_tolerance_chunks = parse_u64(key, value);
  } else if (key == "out_dir") {
    config.out_dir = value;
  } else if (key == "model_cache") {
    config.model_cache = value;
  } else if (key == "dump_diagrams") {
    config.dump_diagrams = value;
  } else {
    raise(ErrorCode::ConfigInvalid, "unknown config key: " + key);
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::ConfigInvalid, "cannot open config file: " + path);
  RunConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorCode::ConfigInvalid,
            "config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_config_pair(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

void validate_config(const RunConfig& config) {
  if (config.case_name.empty()) {
    raise(ErrorCode::ConfigInvalid, "case must not be empty");
  }
  if (config.chunk_size < 2) {
    raise(ErrorCode::ConfigInvalid, "chunk_size must be >= 2");
  }
  if (!(config.warmup_fraction > 0.0 && config.warmup_fraction < 1.0)) {
    raise(ErrorCode::ConfigInvalid, "warmup_fraction must lie in (0, 1)");
  }
  if (!(config.threshold_low > 0.0 && config.threshold_low <= config.threshold_high &&
        config.threshold_high <= 1.0)) {
    raise(ErrorCode::ConfigInvalid, "thresholds must satisfy 0 < low <= high <= 1");
  }
  if (config.grid_rows < 2 || config.grid_cols < 2) {
    raise(ErrorCode::ConfigInvalid, "grid must be at least 2x2");
  }
  if (config.latent_dim < 1) {
    raise(ErrorCode::ConfigInvalid, "latent_dim must be >= 1");
  }
  if (config.kmeans_k < 2) {
    raise(ErrorCode::ConfigInvalid, "kmeans_k must be >= 2");
  }
  if (config.som.epochs < 1 || config.som.alpha0 <= 0.0 || config.som.sigma_min <= 0.0) {
    raise(ErrorCode::ConfigInvalid, "SOM schedule parameters must be positive");
  }
}

EvalResult evaluate(std::span<const PValueRecord> records,
                    std::span<const Chunk> chunks,
                    const StreamAnnotation& annotation,
                    std::size_t tolerance_chunks) {
  EvalResult result;
  if (chunks.empty()) return result;
  const std::size_t start = chunks.front().begin;
  const std::size_t chunk_size = chunks.front().end - chunks.front().begin;
  const std::size_t covered_end = chunks.back().end;

  std::vector<std::size_t> boundary_chunks;
  for (std::size_t b : annotation.boundaries) {
    if (b >= start && b < covered_end) {
      boundary_chunks.push_back((b - start) / chunk_size);
    }
  }
  result.boundaries_considered = boundary_chunks.size();

  std::vector<std::size_t> flag_chunks;
  for (const auto& r : records) {
    if (r.flag_05) flag_chunks.push_back(r.chunk_index);
  }
  result.flags = flag_chunks.size();

  struct Candidate {
    std::size_t distance;
    std::size_t boundary;  // index into boundary_chunks
    std::size_t flag;      // index into flag_chunks
  };
  std::vector<Candidate> candidates;
  for (std::size_t f = 0; f < flag_chunks.size(); ++f) {
    for (std::size_t b = 0; b < boundary_chunks.size(); ++b) {
      const std::size_t d = flag_chunks[f] > boundary_chunks[b]
                                ? flag_chunks[f] - boundary_chunks[b]
                                : boundary_chunks[b] - flag_chunks[f];
      if (d <= tolerance_chunks) candidates.push_back({d, b, f});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    if (x.boundary != y.boundary) return x.boundary < y.boundary;
    return x.flag < y.flag;
  });

  std::vector<bool> boundary_matched(boundary_chunks.size(), false);
  std::vector<bool> flag_used(flag_chunks.size(), false);
  for (const auto& c : candidates) {
    if (boundary_matched[c.boundary] || flag_used[c.flag]) continue;
    boundary_matched[c.boundary] = true;
    flag_used[c.flag] = true;
    ++result.boundaries_matched;
  }

  result.detection_rate =
      result.boundaries_considered
          ? static_cast<double>(result.boundaries_matched) /
                static_cast<double>(result.boundaries_considered)
          : 1.0;
  result.false_alarm_rate =
      result.flags ? static_cast<double>(result.flags - result.boundaries_matched) /
                         static_cast<double>(result.flags)
                   : 0.0;
  return result;
}

namespace {

std::uint64_t compute_cache_key(const RunConfig& config, const SampleSource& source,
                                std::size_t warm_len) {
  std::ostringstream key;
  key << projector_name(config.projector) << '|' << config.grid_rows << 'x'
      << config.grid_cols << '|' << config.latent_dim << '|' << config.kmeans_k
      << '|' << config.seed << '|' << warm_len << '|' << source.size() << '|'
      << source.dim() << '|' << config.som.alpha0 << '|' << config.som.sigma0
      << '|' << config.som.sigma_min << '|' << config.som.epochs << '|'
      << config.kpca_gamma << '|' << config.kpca_cap;
  const std::string s = key.str();
  std::uint64_t h = fnv1a64(
      {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()});
  // Fold in a content probe of the warm-up window.
  const auto probe = [&](std::size_t i) {
    const auto x = source.sample(i);
    h = fnv1a64({reinterpret_cast<const std::uint8_t*>(x.data()),
                 x.size() * sizeof(float)},
                h);
  };
  if (warm_len > 0) {
    probe(0);
    probe(warm_len / 2);
    probe(warm_len - 1);
  }
  return h;
}

FittedProjector fit_projector(const RunConfig& config, const FloatWindow& window) {
  FittedProjector fitted;
  switch (config.projector) {
    case ProjectorKind::Som: {
      SomModel model = som_fit(window, config.grid_rows, config.grid_cols,
                               config.som, mix_seed(config.seed, "som"));
      fitted.centroids.centroids = model.codebooks;
      fitted.model = std::move(model);
      break;
    }
    case ProjectorKind::Pca: {
      PcaModel model = pca_fit(window, config.latent_dim);
      Matrix latents(window.count, config.latent_dim);
      for (std::size_t i = 0; i < window.count; ++i) {
        const auto y = pca_project(model, window.sample(i));
        std::copy(y.begin(), y.end(), latents.row(i).begin());
      }
      fitted.centroids =
          kmeans_fit(latents, config.kmeans_k, mix_seed(config.seed, "kmeans"));
      fitted.model = std::move(model);
      break;
    }
    case ProjectorKind::Kpca: {
      KpcaModel model = kpca_fit(window, config.latent_dim, config.kpca_gamma,
                                 mix_seed(config.seed, "kpca"), config.kpca_cap);
      fitted.centroids = kmeans_fit(model.training_latents, config.kmeans_k,
                                    mix_seed(config.seed, "kmeans"));
      fitted.model = std::move(model);
      break;
    }
  }
  return fitted;
}

}  // namespace

RunOutputs run_on_source(const RunConfig& config, const SampleSource& source,
                         const StreamAnnotation& annotation,
                         const ChunkHook& hook) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n = source.size();
  const std::size_t dim = source.dim();
  if (n == 0 || dim == 0) {
    raise(ErrorCode::ConfigInvalid, "stream is empty");
  }
  const std::size_t warm_len = static_cast<std::size_t>(
      std::floor(config.warmup_fraction * static_cast<double>(n) + 1e-9));
  if (warm_len == 0) {
    raise(ErrorCode::ConfigInvalid, "warm-up window is empty");
  }
  if (config.projector != ProjectorKind::Som) {
    if (warm_len <= config.latent_dim) {
      raise(ErrorCode::ConfigInvalid, "warm-up window smaller than latent_dim");
    }
    const std::size_t retained = (config.projector == ProjectorKind::Kpca &&
                                  config.kpca_cap > 0)
                                     ? std::min(config.kpca_cap, warm_len)
                                     : warm_len;
    if (retained < config.kmeans_k) {
      raise(ErrorCode::ConfigInvalid, "warm-up window smaller than kmeans_k");
    }
  }
  const std::size_t start = config.start_offset.value_or(warm_len);
  if (start >= n) {
    raise(ErrorCode::ConfigInvalid, "start_offset beyond the end of the stream");
  }

  // Offline pre-phase: copy the warm-up window and fit the projector.
  std::vector<float> warm(warm_len * dim);
  for (std::size_t i = 0; i < warm_len; ++i) {
    const auto x = source.sample(i);
    std::copy(x.begin(), x.end(), warm.begin() + static_cast<std::ptrdiff_t>(i * dim));
  }
  const FloatWindow window{warm.data(), warm_len, dim};

  const std::uint64_t cache_key = compute_cache_key(config, source, warm_len);
  FittedProjector fitted;
  bool from_cache = false;
  if (!config.model_cache.empty()) {
    if (auto cached = load_fitted(config.model_cache, cache_key)) {
      fitted = std::move(*cached);
      from_cache = true;
    }
  }
  if (!from_cache) {
    fitted = fit_projector(config, window);
    if (!config.model_cache.empty()) {
      save_fitted(config.model_cache, fitted, cache_key);
    }
  }
  warm.clear();
  warm.shrink_to_fit();

  RunOutputs out;
  out.chunks = make_chunks(n, annotation, config.chunk_size, start);

  std::ofstream diagram_dump;
  if (!config.dump_diagrams.empty()) {
    diagram_dump.open(config.dump_diagrams, std::ios::binary);
    if (!diagram_dump) {
      raise(ErrorCode::IoError, "cannot open diagram dump: " + config.dump_diagrams);
    }
    diagram_dump << "chunk,point,bar_index,lifetime\n";
  }

  std::vector<PersistenceDiagram> diagrams;
  out.mean_distances.reserve(out.chunks.size());
  out.pe.reserve(out.chunks.size());
  for (const Chunk& chunk : out.chunks) {
    const DistanceDescriptor descriptor =
        centroid_distances(fitted.model, fitted.centroids, source, chunk);
    double mean = 0.0;
    for (double v : descriptor.matrix.data) mean += v;
    mean /= static_cast<double>(descriptor.matrix.data.size());
    out.mean_distances.push_back(mean);

    PeVector pe = config.dump_diagrams.empty() ? chunk_pe(descriptor)
                                               : chunk_pe(descriptor, &diagrams);
    if (diagram_dump.is_open()) {
      for (std::size_t p = 0; p < diagrams.size(); ++p) {
        for (std::size_t b = 0; b < diagrams[p].lifetimes.size(); ++b) {
          diagram_dump << chunk.index << ',' << p << ',' << b << ','
                       << format_double(diagrams[p].lifetimes[b]) << '\n';
        }
      }
    }

    const PValueRecord* record_ptr = nullptr;
    if (chunk.index >= 1) {
      const PeVector& reference =
          config.fixed_reference ? out.pe.front() : out.pe.back();
      out.records.push_back(make_record(reference, pe, chunk, config.threshold_low,
                                        config.threshold_high));
      record_ptr = &out.records.back();
    }
    out.pe.push_back(std::move(pe));
    if (hook) hook(chunk, out.pe.back(), record_ptr);
  }

  const EvalResult eval =
      evaluate(out.records, out.chunks, annotation, config.eval_tolerance_chunks);

  RunReport& report = out.report;
  report.case_name = config.case_name;
  report.projector = projector_name(config.projector);
  report.chunk_size = config.chunk_size;
  report.seed = config.seed;
  report.n_chunks = out.chunks.size();
  report.n_records = out.records.size();
  for (const auto& r : out.records) {
    report.flags_05 += r.flag_05 ? 1 : 0;
    report.flags_10 += r.flag_10 ? 1 : 0;
  }
  report.boundaries_streamed = eval.boundaries_considered;
  report.boundaries_total = annotation.boundaries.size();
  report.detection_rate = eval.detection_rate;
  report.false_alarm_rate = eval.false_alarm_rate;
  report.eval_tolerance_chunks = config.eval_tolerance_chunks;
  report.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

RunOutputs run(const RunConfig& config) {
  validate_config(config);
  namespace fs = std::filesystem;

  AnnotatedStream stream;
  if (CaseSpec::is_builtin(config.case_name)) {
    if (config.mnist_dir.empty()) {
      raise(ErrorCode::ConfigInvalid,
            "builtin case '" + config.case_name + "' needs an mnist directory");
    }
    const ImageSet set = load_mnist_dir(config.mnist_dir);
    const DigitIndex index = build_digit_index(set);
    stream = generate_stream(CaseSpec::builtin(config.case_name), index, set,
                             config.seed, config.sampling);
  } else {
    const std::string sidecar = config.annotation_path.empty()
                                    ? config.case_name + ".json"
                                    : config.annotation_path;
    stream = load_stream(config.case_name, sidecar);
  }

  const StreamSamples samples(stream);
  RunOutputs out = run_on_source(config, samples, stream.annotation);

  fs::create_directories(config.out_dir);
  const fs::path dir(config.out_dir);
  write_results_csv((dir / "results.csv").string(), out.records);
  write_means_csv((dir / "means.csv").string(), out.chunks, out.mean_distances);
  write_report_files(config.out_dir, out.report);
  return out;
}

void write_results_csv(const std::string& path,
                       std::span<const PValueRecord> records) {
  std::ostringstream out;
  out << "chunk_index,start_sample,end_sample,u_statistic,p_value,flag05,flag10,"
         "boundary_inside\n";
  for (const auto& r : records) {
    out << r.chunk_index << ',' << r.begin << ',' << r.end << ','
        << format_double(r.u_statistic) << ',' << format_double(r.p_value) << ','
        << (r.flag_05 ? 1 : 0) << ',' << (r.flag_10 ? 1 : 0) << ','
        << (r.boundary_inside ? 1 : 0) << '\n';
  }
  write_text_file(path, out.str());
}

void write_means_csv(const std::string& path, std::span<const Chunk> chunks,
                     std::span<const double> means) {
  std::ostringstream out;
  out << "chunk_index,mean_distance\n";
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    out << chunks[i].index << ',' << format_double(means[i]) << '\n';
  }
  write_text_file(path, out.str());
}

namespace {

std::string report_csv_string(const RunReport& r) {
  std::ostringstream out;
  out << "case,projector,chunk_size,seed,n_chunks,n_records,flags05,flags10,"
         "boundaries_streamed,boundaries_total,detection_rate,false_alarm_rate,"
         "eval_tolerance_chunks,wall_time_sec\n";
  out << r.case_name << ',' << r.projector << ',' << r.chunk_size << ',' << r.seed
      << ',' << r.n_chunks << ',' << r.n_records << ',' << r.flags_05 << ','
      << r.flags_10 << ',' << r.boundaries_streamed << ',' << r.boundaries_total
      << ',' << format_double(r.detection_rate) << ','
      << format_double(r.false_alarm_rate) << ',' << r.eval_tolerance_chunks << ','
      << format_double(r.wall_time_sec) << '\n';
  return out.str();
}

std::string report_text_string(const RunReport& r) {
  std::ostringstream out;
  out << "drift run summary\n"
      << "  case:                 " << r.case_name << '\n'
      << "  projector:            " << r.projector << '\n'
      << "  chunk size:           " << r.chunk_size << '\n'
      << "  seed:                 " << r.seed << '\n'
      << "  chunks:               " << r.n_chunks << '\n'
      << "  p-value records:      " << r.n_records << '\n'
      << "  flags (p < low):      " << r.flags_05 << '\n'
      << "  flags (p < high):     " << r.flags_10 << '\n'
      << "  boundaries streamed:  " << r.boundaries_streamed << '\n'
      << "  boundaries in stream: " << r.boundaries_total << " ("
      << r.boundaries_total + 1 << " segments)\n"
      << std::fixed << std::setprecision(4)
      << "  detection rate:       " << r.detection_rate << "  (tolerance "
      << r.eval_tolerance_chunks << " chunks)\n"
      << "  false alarm rate:     " << r.false_alarm_rate << '\n'
      << std::setprecision(2)
      << "  wall time:            " << r.wall_time_sec << " s\n";
  return out.str();
}

}  // namespace

void write_report_files(const std::string& dir, const RunReport& report) {
  namespace fs = std::filesystem;
  write_text_file((fs::path(dir) / "report.csv").string(), report_csv_string(report));
  write_text_file((fs::path(dir) / "report.txt").string(), report_text_string(report));
}

RunReport read_report_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open report csv: " + path);
  std::string header_line;
  std::string value_line;
  if (!std::getline(in, header_line) || !std::getline(in, value_line)) {
    raise(ErrorCode::IoError, "report csv needs a header and one row: " + path);
  }
  const auto headers = split_csv_line(header_line);
  const auto values = split_csv_line(value_line);
  if (headers.size() != values.size()) {
    raise(ErrorCode::IoError, "report csv header/row mismatch: " + path);
  }
  RunReport r;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    const std::string& key = headers[i];
    const std::string& value = values[i];
    try {
      if (key == "case") r.case_name = value;
      else if (key == "projector") r.projector = value;
      else if (key == "chunk_size") r.chunk_size = std::stoull(value);
      else if (key == "seed") r.seed = std::stoull(value);
      else if (key == "n_chunks") r.n_chunks = std::stoull(value);
      else if (key == "n_records") r.n_records = std::stoull(value);
      else if (key == "flags05") r.flags_05 = std::stoull(value);
      else if (key == "flags10") r.flags_10 = std::stoull(value);
      else if (key == "boundaries_streamed") r.boundaries_streamed = std::stoull(value);
      else if (key == "boundaries_total") r.boundaries_total = std::stoull(value);
      else if (key == "detection_rate") r.detection_rate = std::stod(value);
      else if (key == "false_alarm_rate") r.false_alarm_rate = std::stod(value);
      else if (key == "eval_tolerance_chunks") r.eval_tolerance_chunks = std::stoull(value);
      else if (key == "wall_time_sec") r.wall_time_sec = std::stod(value);
    } catch (const std::exception&) {
      raise(ErrorCode::IoError, "report csv field '" + key + "' is malformed: " + path);
    }
  }
  return r;
}

namespace {

std::vector<const RunReport*> sorted_report_rows(std::span<const RunReport> reports) {
  std::vector<const RunReport*> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const RunReport* a, const RunReport* b) {
    if (a->case_name != b->case_name) return a->case_name < b->case_name;
    if (a->chunk_size != b->chunk_size) return a->chunk_size < b->chunk_size;
    if (a->projector != b->projector) return a->projector < b->projector;
    return a->seed < b->seed;
  });
  return rows;
}

}  // namespace

std::string format_table_text(std::span<const RunReport> reports) {
  if (reports.empty()) return "";
  const auto rows = sorted_report_rows(reports);
  std::size_t case_width = 4;  // "case"
  for (const RunReport* r : rows) {
    case_width = std::max(case_width, r->case_name.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(case_width + 2)) << "case"
      << std::setw(12) << "chunk_size" << std::setw(8) << "method" << std::setw(8)
      << "drifts" << std::setw(12) << "flags@low" << std::setw(12) << "flags@high"
      << '\n';
  for (const RunReport* r : rows) {
    out << std::left << std::setw(static_cast<int>(case_width + 2)) << r->case_name
        << std::setw(12) << r->chunk_size << std::setw(8) << r->projector
        << std::setw(8) << r->boundaries_streamed << std::setw(12) << r->flags_05
        << std::setw(12) << r->flags_10 << '\n';
  }
  return out.str();
}

std::string format_table_csv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "case,chunk_size,method,drifts,flags05,flags10\n";
  for (const RunReport* r : sorted_report_rows(reports)) {
    out << r->case_name << ',' << r->chunk_size << ',' << r->projector << ','
        << r->boundaries_streamed << ',' << r->flags_05 << ',' << r->flags_10
        << '\n';
  }
  return out.str();
}

}  // namespace driftscape
