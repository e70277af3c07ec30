// Command-line pipeline driver: detect, scale-space, hessian, descriptors,
// synth. Configuration comes from an optional JSON document plus flags; flags
// win. All outputs are deterministic for fixed inputs (17-significant-digit
// floats in CSV, round-trip shortest floats in JSON).

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "rbd/descriptor.hpp"
#include "rbd/detector.hpp"
#include "rbd/error.hpp"
#include "rbd/hessian.hpp"
#include "rbd/mesh.hpp"
#include "rbd/mesh_io.hpp"
#include "rbd/response.hpp"
#include "rbd/scalespace.hpp"
#include "rbd/synth.hpp"
#include "rbd/version.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct SurfaceInput {
  std::string id;
  std::string mesh;
  std::string signal;  // optional sidecar CSV
};

struct PipelineConfig {
  std::string mesh;
  std::string signal;
  std::vector<SurfaceInput> surfaces;
  std::string out = "out";
  std::string response = "detsum";
  double tmin = 0.0;  // 0 = derive from the mesh
  double tmax = 0.0;
  int levels = 12;
  int substeps = 4;
  double threshold = 0.0;
  bool minima = true;
  bool maxima = true;
  double overlap = 0.5;
  int words = 16;
  int max_pairs = 64;
  std::uint64_t seed = 0;
  std::string codebook;
  bool train = false;
};

struct FlagOverrides {
  std::optional<std::string> mesh, signal, out, response, codebook;
  std::optional<double> tmin, tmax, threshold, overlap;
  std::optional<int> levels, substeps, words, max_pairs;
  std::optional<std::uint64_t> seed;
  std::optional<bool> minima, maxima;
  bool train = false;
};

struct StageTimer {
  using Clock = std::chrono::steady_clock;
  Clock::time_point start = Clock::now();
  Json timings = Json::object();

  void lap(const std::string& stage) {
    const auto now = Clock::now();
    timings[stage] = std::chrono::duration<double, std::milli>(now - start).count();
    start = now;
  }
};

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rbd::ParseError(path + ": cannot open config file");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw rbd::ParseError(path + ": " + e.what());
  }

  PipelineConfig cfg;
  try {
    if (j.contains("mesh")) cfg.mesh = j["mesh"].get<std::string>();
    if (j.contains("signal")) cfg.signal = j["signal"].get<std::string>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("response")) cfg.response = j["response"].get<std::string>();
    if (j.contains("tmin")) cfg.tmin = j["tmin"].get<double>();
    if (j.contains("tmax")) cfg.tmax = j["tmax"].get<double>();
    if (j.contains("levels")) cfg.levels = j["levels"].get<int>();
    if (j.contains("substeps")) cfg.substeps = j["substeps"].get<int>();
    if (j.contains("threshold")) cfg.threshold = j["threshold"].get<double>();
    if (j.contains("minima")) cfg.minima = j["minima"].get<bool>();
    if (j.contains("maxima")) cfg.maxima = j["maxima"].get<bool>();
    if (j.contains("overlap")) cfg.overlap = j["overlap"].get<double>();
    if (j.contains("words")) cfg.words = j["words"].get<int>();
    if (j.contains("max_pairs")) cfg.max_pairs = j["max_pairs"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("codebook")) cfg.codebook = j["codebook"].get<std::string>();
    if (j.contains("train")) cfg.train = j["train"].get<bool>();
    if (j.contains("surfaces")) {
      for (const auto& s : j["surfaces"]) {
        SurfaceInput surf;
        surf.id = s.value("id", "");
        surf.mesh = s.at("mesh").get<std::string>();
        surf.signal = s.value("signal", "");
        cfg.surfaces.push_back(surf);
      }
    }
  } catch (const Json::exception& e) {
    throw rbd::ParseError(path + ": " + e.what());
  }
  return cfg;
}

PipelineConfig merge_config(const std::string& config_path, const FlagOverrides& flags) {
  PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config_file(config_path);
  if (flags.mesh) cfg.mesh = *flags.mesh;
  if (flags.signal) cfg.signal = *flags.signal;
  if (flags.out) cfg.out = *flags.out;
  if (flags.response) cfg.response = *flags.response;
  if (flags.tmin) cfg.tmin = *flags.tmin;
  if (flags.tmax) cfg.tmax = *flags.tmax;
  if (flags.levels) cfg.levels = *flags.levels;
  if (flags.substeps) cfg.substeps = *flags.substeps;
  if (flags.threshold) cfg.threshold = *flags.threshold;
  if (flags.minima) cfg.minima = *flags.minima;
  if (flags.maxima) cfg.maxima = *flags.maxima;
  if (flags.overlap) cfg.overlap = *flags.overlap;
  if (flags.words) cfg.words = *flags.words;
  if (flags.max_pairs) cfg.max_pairs = *flags.max_pairs;
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.codebook) cfg.codebook = *flags.codebook;
  if (flags.train) cfg.train = true;
  return cfg;
}

// Downstream preconditions, checked before any compute starts.
void validate_pipeline_config(const PipelineConfig& cfg) {
  rbd::parse_response_kind(cfg.response);
  if (cfg.tmin != 0.0 || cfg.tmax != 0.0) {
    if (!(cfg.tmin > 0.0) || !(cfg.tmin < cfg.tmax))
      throw rbd::UsageError("scale grid requires 0 < tmin < tmax");
  }
  if (cfg.levels < 3) throw rbd::UsageError("detection requires at least 3 scale levels");
  if (cfg.substeps < 1) throw rbd::UsageError("substeps must be >= 1");
  if (cfg.threshold < 0.0) throw rbd::UsageError("threshold must be non-negative");
  if (!cfg.minima && !cfg.maxima)
    throw rbd::UsageError("at least one of minima/maxima must be enabled");
  if (cfg.overlap < 0.0 || cfg.overlap > 1.0)
    throw rbd::UsageError("overlap must lie in [0, 1]");
  if (cfg.words < 2) throw rbd::UsageError("words must be >= 2");
  if (cfg.max_pairs < 0) throw rbd::UsageError("max-pairs must be non-negative");
}

Json config_echo(const PipelineConfig& cfg) {
  Json j;
  j["mesh"] = cfg.mesh;
  j["signal"] = cfg.signal;
  if (!cfg.surfaces.empty()) {
    Json surfaces = Json::array();
    for (const auto& s : cfg.surfaces)
      surfaces.push_back(Json{{"id", s.id}, {"mesh", s.mesh}, {"signal", s.signal}});
    j["surfaces"] = surfaces;
  }
  j["out"] = cfg.out;
  j["response"] = cfg.response;
  j["tmin"] = cfg.tmin;
  j["tmax"] = cfg.tmax;
  j["levels"] = cfg.levels;
  j["substeps"] = cfg.substeps;
  j["threshold"] = cfg.threshold;
  j["minima"] = cfg.minima;
  j["maxima"] = cfg.maxima;
  j["overlap"] = cfg.overlap;
  j["words"] = cfg.words;
  j["max_pairs"] = cfg.max_pairs;
  j["seed"] = cfg.seed;
  j["codebook"] = cfg.codebook;
  j["train"] = cfg.train;
  return j;
}

Json mesh_stats(const rbd::TriMesh& mesh, int channels) {
  Json j;
  j["vertices"] = mesh.num_vertices();
  j["faces"] = mesh.num_faces();
  j["channels"] = channels;
  j["mean_edge_length"] = mesh.mean_edge_length();
  j["bbox_diagonal"] = mesh.bbox_diagonal();
  j["total_area"] = mesh.total_area();
  j["closed"] = mesh.is_closed();
  return j;
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw rbd::ParseError(path.string() + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const PipelineConfig& cfg, const Json& stats, const Json& timings) {
  Json manifest;
  manifest["tool"] = "rbd";
  manifest["version"] = rbd::kVersion;
  manifest["command"] = command;
  manifest["config"] = config_echo(cfg);
  manifest["mesh_stats"] = stats;
  manifest["timing_ms"] = timings;
  write_json(out_dir / "manifest.json", manifest);
}

struct LoadedSurface {
  rbd::TriMesh mesh;
  rbd::MatX signal;
};

LoadedSurface load_surface(const std::string& mesh_path, const std::string& signal_path) {
  if (mesh_path.empty()) throw rbd::UsageError("no mesh path given (use --mesh or a config file)");
  auto loaded = rbd::load_mesh_with_signal(mesh_path);
  rbd::MatX signal = std::move(loaded.signal);
  if (!signal_path.empty())
    signal = rbd::load_signal_csv(signal_path, loaded.mesh.num_vertices());
  if (signal.cols() == 0)
    throw rbd::UsageError(mesh_path +
                          ": no signal channels (embed ch0.. in a PLY or pass --signal)");
  return {std::move(loaded.mesh), std::move(signal)};
}

rbd::ScaleGrid resolve_grid(const PipelineConfig& cfg, const rbd::TriMesh& mesh) {
  if (cfg.tmin != 0.0 || cfg.tmax != 0.0)
    return rbd::make_scale_grid(cfg.tmin, cfg.tmax, cfg.levels);
  return rbd::default_scale_grid(mesh, cfg.levels);
}

struct PipelineResult {
  rbd::ScaleGrid grid;
  rbd::ScaleSpace space;
  std::vector<rbd::HessianField> stack;
  rbd::ResponseField response;
  std::vector<rbd::Blob> blobs;
};

PipelineResult run_pipeline(const PipelineConfig& cfg, const rbd::TriMesh& mesh,
                            const rbd::MatX& signal, StageTimer* timer = nullptr) {
  PipelineResult r;
  r.grid = resolve_grid(cfg, mesh);
  const rbd::LaplaceOperator op = rbd::cotangent_laplacian(mesh);
  r.space = rbd::heat_flow(mesh, op, signal, r.grid, cfg.substeps);
  if (timer) timer->lap("scale_space");

  const auto frames =
      std::make_shared<const std::vector<rbd::TangentFrame>>(rbd::tangent_frames(mesh));
  r.stack = rbd::hessian_stack(mesh, r.space, frames);
  if (timer) timer->lap("hessian");

  const rbd::ResponseKind kind = rbd::parse_response_kind(cfg.response);
  r.response = rbd::scale_normalize(rbd::compute_response(kind, r.stack), r.grid);
  if (timer) timer->lap("response");

  rbd::DetectorConfig det;
  det.threshold = cfg.threshold;
  det.detect_minima = cfg.minima;
  det.detect_maxima = cfg.maxima;
  det.suppression_overlap = cfg.overlap;
  r.blobs = rbd::detect_blobs(r.response, mesh, r.grid, det);
  if (timer) timer->lap("detect");
  return r;
}

Json blob_to_json(const rbd::Blob& b) {
  Json j;
  j["vertex"] = b.vertex;
  j["position"] = {b.position.x(), b.position.y(), b.position.z()};
  j["t"] = b.t;
  j["radius"] = b.radius;
  j["response"] = b.response;
  j["polarity"] = rbd::polarity_name(b.polarity);
  j["kind"] = rbd::response_kind_name(b.kind);
  return j;
}

void write_blobs(const fs::path& out_dir, const std::vector<rbd::Blob>& blobs) {
  Json arr = Json::array();
  for (const auto& b : blobs) arr.push_back(blob_to_json(b));
  write_json(out_dir / "blobs.json", arr);

  std::ofstream csv(out_dir / "blobs.csv");
  if (!csv) throw rbd::ParseError((out_dir / "blobs.csv").string() + ": cannot open for writing");
  csv << "vertex,x,y,z,t,radius,response,polarity,kind\n";
  for (const auto& b : blobs) {
    csv << b.vertex << "," << rbd::format_double(b.position.x()) << ","
        << rbd::format_double(b.position.y()) << "," << rbd::format_double(b.position.z()) << ","
        << rbd::format_double(b.t) << "," << rbd::format_double(b.radius) << ","
        << rbd::format_double(b.response) << "," << rbd::polarity_name(b.polarity) << ","
        << rbd::response_kind_name(b.kind) << "\n";
  }
}

int cmd_detect(const PipelineConfig& cfg) {
  validate_pipeline_config(cfg);
  fs::create_directories(cfg.out);

  StageTimer timer;
  LoadedSurface surface = load_surface(cfg.mesh, cfg.signal);
  timer.lap("load");

  PipelineConfig resolved = cfg;
  const rbd::ScaleGrid grid = resolve_grid(cfg, surface.mesh);
  resolved.tmin = grid.scale(0);
  resolved.tmax = grid.scale(grid.levels() - 1);

  PipelineResult result = run_pipeline(resolved, surface.mesh, surface.signal, &timer);
  write_blobs(cfg.out, result.blobs);
  timer.lap("write");

  write_manifest(cfg.out, "detect", resolved,
                 mesh_stats(surface.mesh, static_cast<int>(surface.signal.cols())),
                 timer.timings);
  return 0;
}

int cmd_scale_space(const PipelineConfig& cfg) {
  validate_pipeline_config(cfg);
  fs::create_directories(cfg.out);

  StageTimer timer;
  LoadedSurface surface = load_surface(cfg.mesh, cfg.signal);
  timer.lap("load");

  PipelineConfig resolved = cfg;
  const rbd::ScaleGrid grid = resolve_grid(cfg, surface.mesh);
  resolved.tmin = grid.scale(0);
  resolved.tmax = grid.scale(grid.levels() - 1);

  const rbd::LaplaceOperator op = rbd::cotangent_laplacian(surface.mesh);
  const rbd::ScaleSpace space =
      rbd::heat_flow(surface.mesh, op, surface.signal, grid, cfg.substeps);
  timer.lap("scale_space");

  rbd::save_signal_csv(fs::path(cfg.out) / "level_initial.csv", space.initial);
  for (int k = 0; k < grid.levels(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "level_%02d.csv", k);
    rbd::save_signal_csv(fs::path(cfg.out) / name, space.level(k));
  }
  timer.lap("write");

  write_manifest(cfg.out, "scale-space", resolved,
                 mesh_stats(surface.mesh, static_cast<int>(surface.signal.cols())),
                 timer.timings);
  return 0;
}

int cmd_hessian(const PipelineConfig& cfg) {
  validate_pipeline_config(cfg);
  fs::create_directories(cfg.out);

  StageTimer timer;
  LoadedSurface surface = load_surface(cfg.mesh, cfg.signal);
  timer.lap("load");

  PipelineConfig resolved = cfg;
  const rbd::ScaleGrid grid = resolve_grid(cfg, surface.mesh);
  resolved.tmin = grid.scale(0);
  resolved.tmax = grid.scale(grid.levels() - 1);

  const rbd::LaplaceOperator op = rbd::cotangent_laplacian(surface.mesh);
  const rbd::ScaleSpace space =
      rbd::heat_flow(surface.mesh, op, surface.signal, grid, cfg.substeps);
  timer.lap("scale_space");
  const auto frames =
      std::make_shared<const std::vector<rbd::TangentFrame>>(rbd::tangent_frames(surface.mesh));
  const auto stack = rbd::hessian_stack(surface.mesh, space, frames);
  timer.lap("hessian");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < grid.levels(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "hessian_%02d.csv", k);
    std::ofstream csv(fs::path(cfg.out) / name);
    if (!csv) throw rbd::ParseError("cannot open hessian dump for writing");
    csv << "vertex,channel,H11,H12,H22\n";
    const rbd::HessianField& field = stack[k];
    for (int v = 0; v < field.num_vertices(); ++v) {
      for (int c = 0; c < field.channels; ++c) {
        if (field.is_valid(v)) {
          const rbd::Mat2 h = field.matrix(v, c);
          csv << v << "," << c << "," << rbd::format_double(h(0, 0)) << ","
              << rbd::format_double(h(0, 1)) << "," << rbd::format_double(h(1, 1)) << "\n";
        } else {
          csv << v << "," << c << "," << rbd::format_double(nan) << ","
              << rbd::format_double(nan) << "," << rbd::format_double(nan) << "\n";
        }
      }
    }
  }
  timer.lap("write");

  write_manifest(cfg.out, "hessian", resolved,
                 mesh_stats(surface.mesh, static_cast<int>(surface.signal.cols())),
                 timer.timings);
  return 0;
}

int cmd_descriptors(const PipelineConfig& cfg) {
  validate_pipeline_config(cfg);
  if (cfg.codebook.empty() && !cfg.train)
    throw rbd::UsageError("descriptors needs --train or --codebook <path>");
  fs::create_directories(cfg.out);

  std::vector<SurfaceInput> surfaces = cfg.surfaces;
  if (surfaces.empty()) {
    if (cfg.mesh.empty())
      throw rbd::UsageError("descriptors needs at least one surface (--mesh or config surfaces)");
    surfaces.push_back({fs::path(cfg.mesh).stem().string(), cfg.mesh, cfg.signal});
  }
  for (auto& s : surfaces)
    if (s.id.empty()) s.id = fs::path(s.mesh).stem().string();

  StageTimer timer;
  std::vector<std::vector<rbd::BlobPairFeature>> per_surface;
  std::vector<std::string> warnings;
  per_surface.reserve(surfaces.size());
  for (const auto& s : surfaces) {
    LoadedSurface surface = load_surface(s.mesh, s.signal);
    PipelineResult result = run_pipeline(cfg, surface.mesh, surface.signal);
    per_surface.push_back(rbd::make_pairs(result.blobs, cfg.max_pairs));
    if (result.blobs.empty())
      warnings.push_back(s.id + ": no blobs detected, descriptor is the zero vector");
  }
  timer.lap("pipeline");

  rbd::Codebook codebook;
  if (cfg.train) {
    std::vector<rbd::BlobPairFeature> corpus;
    for (const auto& feats : per_surface) corpus.insert(corpus.end(), feats.begin(), feats.end());
    try {
      codebook = rbd::train_codebook(corpus, cfg.words, cfg.seed);
    } catch (const rbd::InsufficientDataError& e) {
      throw rbd::InsufficientDataError(std::string(e.what()) + " (surfaces: " +
                                       std::to_string(surfaces.size()) + ", pooled pairs: " +
                                       std::to_string(corpus.size()) + ")");
    }
    rbd::save_codebook(fs::path(cfg.out) / "codebook.json", codebook);
  } else {
    codebook = rbd::load_codebook(cfg.codebook);
  }
  timer.lap("codebook");

  std::ofstream csv(fs::path(cfg.out) / "descriptors.csv");
  if (!csv) throw rbd::ParseError("cannot open descriptors.csv for writing");
  csv << "surface_id";
  for (int w = 0; w < codebook.words; ++w) csv << ",b" << w;
  csv << "\n";
  for (size_t i = 0; i < surfaces.size(); ++i) {
    const rbd::VecX histogram = rbd::encode(per_surface[i], codebook);
    csv << surfaces[i].id;
    for (int w = 0; w < codebook.words; ++w) csv << "," << rbd::format_double(histogram[w]);
    csv << "\n";
  }
  timer.lap("encode");

  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  Json stats;
  stats["surfaces"] = surfaces.size();
  write_manifest(cfg.out, "descriptors", cfg, stats, timer.timings);
  return 0;
}

struct SynthParams {
  std::string kind;
  int n = 32;
  double extent = 1.0;
  int subdiv = 3;
  double radius = 1.0;
  std::vector<double> bumps;           // sigma at the domain center, channel 0
  std::vector<std::string> bumps_at;   // "x,y,z,sigma,channel,amplitude"
  std::string format = "off";
  std::string out = "out";
};

rbd::GaussianSpec parse_bump_at(const std::string& text) {
  std::vector<double> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ','))
    parts.push_back(std::strtod(token.c_str(), nullptr));
  if (parts.size() != 6)
    throw rbd::UsageError("--bump-at expects x,y,z,sigma,channel,amplitude");
  rbd::GaussianSpec g;
  g.center = rbd::Vec3(parts[0], parts[1], parts[2]);
  g.sigma = parts[3];
  g.channel = static_cast<int>(parts[4]);
  g.amplitude = parts[5];
  return g;
}

int cmd_synth(const SynthParams& params) {
  rbd::TriMesh mesh = [&] {
    if (params.kind == "plane") return rbd::planar_grid(params.n, params.extent);
    if (params.kind == "icosphere") return rbd::icosphere(params.subdiv, params.radius);
    throw rbd::UsageError("synth kind must be plane or icosphere");
  }();

  const rbd::Vec3 center = params.kind == "plane"
                               ? rbd::Vec3(params.extent / 2.0, params.extent / 2.0, 0.0)
                               : rbd::Vec3(0.0, 0.0, params.radius);
  std::vector<rbd::GaussianSpec> spec;
  for (double sigma : params.bumps) spec.push_back({center, sigma, 0, 1.0});
  for (const auto& text : params.bumps_at) spec.push_back(parse_bump_at(text));

  rbd::SyntheticScene scene = rbd::plant_gaussians(std::move(mesh), std::move(spec));

  fs::create_directories(params.out);
  const fs::path out(params.out);
  if (params.format == "ply") {
    rbd::save_ply(out / "mesh.ply", scene.mesh, &scene.signal);
  } else if (params.format == "off") {
    rbd::save_off(out / "mesh.off", scene.mesh);
  } else {
    throw rbd::UsageError("--format must be off or ply");
  }
  rbd::save_signal_csv(out / "signal.csv", scene.signal);

  Json truth = Json::array();
  for (const auto& g : scene.ground_truth) {
    Json j;
    j["center"] = {g.center.x(), g.center.y(), g.center.z()};
    j["sigma"] = g.sigma;
    j["channel"] = g.channel;
    j["amplitude"] = g.amplitude;
    truth.push_back(j);
  }
  Json doc;
  doc["kind"] = params.kind;
  doc["vertices"] = scene.mesh.num_vertices();
  doc["faces"] = scene.mesh.num_faces();
  doc["channels"] = scene.signal.cols();
  doc["ground_truth"] = truth;
  write_json(out / "ground_truth.json", doc);
  return 0;
}

void add_pipeline_options(CLI::App* cmd, std::string& config_path, FlagOverrides& flags,
                          bool descriptor_options) {
  cmd->add_option("--config", config_path, "JSON config file; flags override its keys");
  cmd->add_option("--mesh", flags.mesh, "input mesh (OFF or ascii PLY)");
  cmd->add_option("--signal", flags.signal, "sidecar signal CSV (vertex,ch0,...)");
  cmd->add_option("--out", flags.out, "output directory");
  cmd->add_option("--response", flags.response, "response kind: detsum|theorem|mean");
  cmd->add_option("--tmin", flags.tmin, "smallest scale (default: mesh-derived)");
  cmd->add_option("--tmax", flags.tmax, "largest scale (default: mesh-derived)");
  cmd->add_option("--levels", flags.levels, "number of scale levels (default 12)");
  cmd->add_option("--substeps", flags.substeps, "implicit-Euler substeps per level (default 4)");
  cmd->add_option("--threshold", flags.threshold, "absolute response threshold (default 0)");
  cmd->add_option("--minima", flags.minima, "detect minima (default true)");
  cmd->add_option("--maxima", flags.maxima, "detect maxima (default true)");
  cmd->add_option("--overlap", flags.overlap, "suppression overlap in [0,1] (default 0.5)");
  cmd->add_option("--seed", flags.seed, "seed for codebook initialization");
  if (descriptor_options) {
    cmd->add_option("--words", flags.words, "codebook size W (default 16)");
    cmd->add_option("--max-pairs", flags.max_pairs, "strongest-blob cap for pairing (default 64)");
    cmd->add_option("--codebook", flags.codebook, "existing codebook JSON");
    cmd->add_flag("--train", flags.train, "train a codebook on the input surfaces");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian blob detection for vector-valued signals on triangulated surfaces"};
  app.require_subcommand(1);

  std::string config_detect, config_scale, config_hessian, config_desc;
  FlagOverrides flags_detect, flags_scale, flags_hessian, flags_desc;

  CLI::App* detect = app.add_subcommand("detect", "run the full blob-detection pipeline");
  add_pipeline_options(detect, config_detect, flags_detect, false);

  CLI::App* scale = app.add_subcommand("scale-space", "dump the smoothed signal per scale");
  add_pipeline_options(scale, config_scale, flags_scale, false);

  CLI::App* hessian = app.add_subcommand("hessian", "dump per-vertex Hessian fields per scale");
  add_pipeline_options(hessian, config_hessian, flags_hessian, false);

  CLI::App* descriptors =
      app.add_subcommand("descriptors", "blob-pair bag-of-words descriptors per surface");
  add_pipeline_options(descriptors, config_desc, flags_desc, true);

  SynthParams synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic scene");
  synth_cmd->add_option("kind", synth.kind, "plane or icosphere")->required();
  synth_cmd->add_option("--n", synth.n, "grid vertices per side (plane)");
  synth_cmd->add_option("--extent", synth.extent, "grid extent (plane)");
  synth_cmd->add_option("--subdiv", synth.subdiv, "subdivision level (icosphere)");
  synth_cmd->add_option("--radius", synth.radius, "sphere radius (icosphere)");
  synth_cmd->add_option("--bump", synth.bumps, "plant a bump of this sigma at the domain center");
  synth_cmd->add_option("--bump-at", synth.bumps_at,
                        "plant a bump: x,y,z,sigma,channel,amplitude");
  synth_cmd->add_option("--format", synth.format, "mesh output format: off|ply (default off)");
  synth_cmd->add_option("--out", synth.out, "output directory");

  try {
    app.parse(argc, argv);
    if (detect->parsed()) return cmd_detect(merge_config(config_detect, flags_detect));
    if (scale->parsed()) return cmd_scale_space(merge_config(config_scale, flags_scale));
    if (hessian->parsed()) return cmd_hessian(merge_config(config_hessian, flags_hessian));
    if (descriptors->parsed()) return cmd_descriptors(merge_config(config_desc, flags_desc));
    if (synth_cmd->parsed()) return cmd_synth(synth);
    throw rbd::UsageError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: usage: " << e.what() << "\n";
    return static_cast<int>(rbd::ErrorClass::usage);
  } catch (const rbd::Error& e) {
    std::cerr << "error: " << rbd::error_class_name(e.error_class()) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
}
