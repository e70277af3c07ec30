// Acceptance suite: end-to-end checks of the blob-detection pipeline against
// closed-form oracles and behavioural contracts. Each criterion prints one
// [PASS]/[FAIL] line; the process exits non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

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

namespace fs = std::filesystem;
using namespace rbd;

namespace {

// ---------------------------------------------------------------------------
// Small shared helpers
// ---------------------------------------------------------------------------

struct TempTree {
  fs::path root;

  TempTree() {
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    root = fs::temp_directory_path() / ("rbd-acceptance-" + std::to_string(stamp));
    fs::create_directories(root);
  }
  ~TempTree() {
    std::error_code ec;
    fs::remove_all(root, ec);
  }
  fs::path operator/(const std::string& name) const { return root / name; }
};

MatX sample(const TriMesh& mesh, const std::function<double(const Vec3&)>& f) {
  MatX values(mesh.num_vertices(), 1);
  for (int v = 0; v < mesh.num_vertices(); ++v) values(v, 0) = f(mesh.position(v));
  return values;
}

FramePtr frames_of(const TriMesh& mesh) {
  return std::make_shared<std::vector<TangentFrame>>(tangent_frames(mesh));
}

// Vertices whose Hessian stencil (vertex plus one-ring) avoids the boundary;
// boundary-adjacent stencils carry a mesh-independent bias and are excluded
// from the oracle comparison.
std::vector<int> deep_interior(const TriMesh& mesh) {
  std::vector<int> out;
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    if (mesh.is_boundary_vertex(v)) continue;
    bool clean = true;
    for (int n : mesh.neighbors(v)) clean = clean && !mesh.is_boundary_vertex(n);
    if (clean) out.push_back(v);
  }
  return out;
}

double field_peak(const ResponseField& field) {
  double peak = 0.0;
  for (int k = 0; k < field.levels(); ++k)
    for (int v = 0; v < field.num_vertices(); ++v)
      if (!field.is_masked(k, v)) peak = std::max(peak, std::abs(field.values(k, v)));
  return peak;
}

std::vector<std::tuple<int, int, int>> blob_keys(const std::vector<Blob>& blobs) {
  std::vector<std::tuple<int, int, int>> keys;
  for (const Blob& b : blobs)
    keys.emplace_back(b.vertex, b.level, b.polarity == Polarity::maximum ? 1 : 0);
  std::sort(keys.begin(), keys.end());
  return keys;
}

struct PipelineOut {
  ScaleGrid grid;
  std::vector<HessianField> stack;
  ResponseField field;  // scale-normalized
};

PipelineOut run_pipeline(const TriMesh& mesh, const MatX& signal, ResponseKind kind, int levels,
                         int substeps = 4) {
  PipelineOut out;
  out.grid = default_scale_grid(mesh, levels);
  const LaplaceOperator op = cotangent_laplacian(mesh);
  const ScaleSpace space = heat_flow(mesh, op, signal, out.grid, substeps);
  out.stack = hessian_stack(mesh, space, frames_of(mesh));
  out.field = scale_normalize(compute_response(kind, out.stack), out.grid);
  return out;
}

int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (!WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path.string() + ">";
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_metric(double value) {
  std::ostringstream out;
  out.precision(3);
  out << value;
  return out.str();
}

// ---------------------------------------------------------------------------
// Criterion 1: for a single channel the vector response field reduces to the
// plain determinant / |trace| of the 2x2 Hessian, and both routes detect the
// same blobs.
// ---------------------------------------------------------------------------
bool grayscale_equivalence(std::string& note) {
  const auto start = std::chrono::steady_clock::now();

  const int n = 48;
  const TriMesh grid = planar_grid(n, 1.0);
  const Vec3 center = grid.position(24 * n + 24);
  const SyntheticScene scene = plant_gaussians(grid, {{center, 0.1, 0, 1.0}});

  const ScaleGrid scales = default_scale_grid(scene.mesh, 10);
  const LaplaceOperator op = cotangent_laplacian(scene.mesh);
  const ScaleSpace space = heat_flow(scene.mesh, op, scene.signal, scales);
  const auto stack = hessian_stack(scene.mesh, space, frames_of(scene.mesh));

  bool ok = true;
  for (ResponseKind kind : {ResponseKind::scalar_detsum, ResponseKind::mean}) {
    const ResponseField lib = scale_normalize(compute_response(kind, stack), scales);

    // Independent grayscale route: plain det / |trace| of the same 2x2
    // Hessians, normalized by hand.
    ResponseField gray;
    gray.kind = kind;
    gray.values.resize(scales.levels(), scene.mesh.num_vertices());
    for (int k = 0; k < scales.levels(); ++k) {
      const double t = scales.scale(k);
      const double weight = kind == ResponseKind::mean ? t : t * t;
      for (int v = 0; v < scene.mesh.num_vertices(); ++v) {
        if (!stack[k].is_valid(v)) {
          gray.values(k, v) = std::numeric_limits<double>::quiet_NaN();
          continue;
        }
        const Mat2 h = stack[k].matrix(v, 0);
        const double raw = kind == ResponseKind::mean
                               ? std::abs(h(0, 0) + h(1, 1))
                               : h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
        gray.values(k, v) = weight * raw;
      }
    }
    gray.normalized = true;

    const double scale = field_peak(gray);
    for (int k = 0; k < scales.levels() && ok; ++k)
      for (int v = 0; v < scene.mesh.num_vertices() && ok; ++v) {
        if (gray.is_masked(k, v) != lib.is_masked(k, v)) ok = false;
        if (gray.is_masked(k, v)) continue;
        const double a = lib.values(k, v), b = gray.values(k, v);
        const double denom = std::max({std::abs(a), std::abs(b), 1e-12 * scale});
        if (std::abs(a - b) > 1e-12 * denom) ok = false;
      }
    if (!ok) {
      note = "response fields diverge";
      return false;
    }

    if (blob_keys(detect_blobs(lib, scene.mesh, scales)) !=
        blob_keys(detect_blobs(gray, scene.mesh, scales))) {
      note = "blob sets diverge";
      return false;
    }
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
  note = format_metric(seconds) + " s (budget 10 s)";
  return ok && seconds < 10.0;
}

// ---------------------------------------------------------------------------
// Criterion 2: the literal double-sum form of the scalar response equals -2
// times the determinant sum on random Hessian fields.
// ---------------------------------------------------------------------------
bool double_sum_identity(std::string& note) {
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  const int channel_choices[] = {1, 2, 4};
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int channels = channel_choices[rep % 3];
    HessianField field = HessianField::zeros(12, channels);
    for (int v = 0; v < 12; ++v)
      for (int c = 0; c < channels; ++c) {
        Mat2 h;
        const double a = gauss(rng), b = gauss(rng), d = gauss(rng);
        h << a, b, b, d;
        field.set_matrix(v, c, h);
      }

    const ResponseField det = br_scalar_detsum({field});
    const ResponseField thm = br_scalar_theorem({field});
    for (int v = 0; v < 12; ++v) {
      const double expected = -2.0 * det.values(0, v);
      const double denom = std::max({std::abs(expected), std::abs(thm.values(0, v)), 1.0});
      worst = std::max(worst, std::abs(thm.values(0, v) - expected) / denom);
    }
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
  note = "max rel dev " + format_metric(worst) + ", " + format_metric(seconds) +
         " s (budget 1 s)";
  return worst <= 1e-12 && seconds < 1.0;
}

// ---------------------------------------------------------------------------
// Criterion 3: the quadratic bowl x^2 + y^2 has Hessian 2*Identity; the
// estimator reproduces it at clean interior vertices and the mean interior
// error decays monotonically under refinement.
// ---------------------------------------------------------------------------
bool quadratic_hessian_oracle(std::string& note) {
  const auto bowl = [](const Vec3& p) { return p.x() * p.x() + p.y() * p.y(); };

  // Part (a): 64x64 regular grid, entrywise within 5% of 2*Identity.
  {
    const TriMesh grid = planar_grid(64, 1.0);
    const HessianField field = covariant_hessian(grid, sample(grid, bowl), frames_of(grid));
    const std::vector<int> clean = deep_interior(grid);
    if (clean.empty()) {
      note = "no clean interior vertices";
      return false;
    }
    for (int v : clean) {
      if (!field.is_valid(v)) {
        note = "invalid interior Hessian";
        return false;
      }
      const Mat2 err = field.matrix(v, 0) - 2.0 * Mat2::Identity();
      if (err.cwiseAbs().maxCoeff() > 0.05 * 2.0) {
        note = "entrywise error " + format_metric(err.cwiseAbs().maxCoeff()) + " at vertex " +
               std::to_string(v);
        return false;
      }
    }
  }

  // Part (b): three-level refinement ladder, mean error over all interior
  // vertices. Symmetric deep-interior stencils reproduce the quadratic to
  // rounding, so the mean is carried by the ring next to the boundary, whose
  // share of the grid — and with it the mean error — shrinks like h.
  std::vector<double> errors;
  for (int n : {17, 33, 65}) {
    const TriMesh grid = planar_grid(n, 1.0);
    const HessianField field = covariant_hessian(grid, sample(grid, bowl), frames_of(grid));
    double sum = 0.0;
    int count = 0;
    for (int v = 0; v < grid.num_vertices(); ++v) {
      if (grid.is_boundary_vertex(v) || !field.is_valid(v)) continue;
      sum += (field.matrix(v, 0) - 2.0 * Mat2::Identity()).cwiseAbs().maxCoeff();
      ++count;
    }
    errors.push_back(sum / count);
  }
  note = "refinement errors " + format_metric(errors[0]) + " -> " + format_metric(errors[1]) +
         " -> " + format_metric(errors[2]);
  // Monotone decrease with 10% slack per step, and a genuine overall drop.
  return errors[1] <= 1.1 * errors[0] && errors[2] <= 1.1 * errors[1] &&
         errors[2] < errors[0];
}

// ---------------------------------------------------------------------------
// Criterion 4: smoothing a discrete delta reproduces the closed-form planar
// heat kernel, and the mass-weighted mean is conserved on closed meshes.
// ---------------------------------------------------------------------------
bool heat_kernel_oracle(std::string& note) {
  const int n = 49;
  const TriMesh grid = planar_grid(n, 1.0);
  const double h = 1.0 / (n - 1);
  const double t = 0.008;
  if (!(h <= std::sqrt(t) / 4.0)) {
    note = "mesh spacing too coarse for the target scale";
    return false;
  }

  const LaplaceOperator op = cotangent_laplacian(grid);
  const int center = (n / 2) * n + n / 2;
  MatX signal = MatX::Zero(grid.num_vertices(), 1);
  signal(center, 0) = 1.0 / op.mass[center];  // unit-integral discrete delta

  const ScaleSpace space = heat_flow(grid, op, signal, make_scale_grid(t / 2.0, t, 2), 48);
  const MatX& level = space.levels.back();

  const Vec3 c = grid.position(center);
  double err2 = 0.0, ref2 = 0.0;
  for (int v = 0; v < grid.num_vertices(); ++v) {
    const double r2 = (grid.position(v) - c).squaredNorm();
    const double expected = std::exp(-r2 / (4.0 * t)) / (4.0 * M_PI * t);
    err2 += op.mass[v] * (level(v, 0) - expected) * (level(v, 0) - expected);
    ref2 += op.mass[v] * expected * expected;
  }
  const double rel_l2 = std::sqrt(err2 / ref2);
  if (rel_l2 > 0.10) {
    note = "kernel rel L2 error " + format_metric(rel_l2);
    return false;
  }

  // Conservation on a closed mesh, per channel.
  const TriMesh sphere = icosphere(3);
  const LaplaceOperator sphere_op = cotangent_laplacian(sphere);
  const SyntheticScene scene = plant_gaussians(
      sphere, {{Vec3(0, 0, 1), 0.4, 0, 2.0}, {Vec3(-1, 0, 0), 0.3, 1, -1.5}});
  const ScaleSpace flow =
      heat_flow(scene.mesh, sphere_op, scene.signal, default_scale_grid(scene.mesh, 6));
  const VecX initial = channel_means(sphere_op, scene.signal);
  double drift = 0.0;
  for (const MatX& lvl : flow.levels) {
    const VecX means = channel_means(sphere_op, lvl);
    for (int ch = 0; ch < means.size(); ++ch)
      drift = std::max(drift,
                       std::abs(means[ch] - initial[ch]) / std::max(1.0, std::abs(initial[ch])));
  }

  note = "kernel rel L2 " + format_metric(rel_l2) + ", mean drift " + format_metric(drift);
  return drift <= 1e-8;
}

// ---------------------------------------------------------------------------
// Criterion 5: a single planted bump is recovered as exactly one blob whose
// center and radius match the analytic optimum of the smoothed response.
// ---------------------------------------------------------------------------
bool planted_bump_recovery(std::string& note) {
  const auto start = std::chrono::steady_clock::now();

  // A fine grid keeps the bump (sigma = 10 mean edges) well away from the
  // boundary; on coarser grids the tail reflects off the corners and spawns
  // spurious maxima.
  const int n = 128;
  const TriMesh grid = planar_grid(n, 1.0);
  const double mean_edge = grid.mean_edge_length();
  const double sigma = 10.0 * mean_edge;
  const int center = 64 * n + 64;
  const Vec3 center_pos = grid.position(center);
  const SyntheticScene scene = plant_gaussians(grid, {{center_pos, sigma, 0, 1.0}});

  const PipelineOut out = run_pipeline(scene.mesh, scene.signal, ResponseKind::scalar_detsum, 12);

  DetectorConfig config;
  config.detect_minima = false;  // a positive bump is a response maximum
  config.threshold = 0.05 * field_peak(out.field);
  const std::vector<Blob> blobs = detect_blobs(out.field, scene.mesh, out.grid, config);

  if (blobs.size() != 1) {
    note = std::to_string(blobs.size()) + " surviving detections (want 1)";
    return false;
  }
  const Blob& blob = blobs[0];

  const double center_err = (blob.position - center_pos).norm();
  if (center_err > 2.0 * mean_edge) {
    note = "center error " + format_metric(center_err) + " > 2 mean edges";
    return false;
  }

  // Brute-force oracle: maximize the closed-form normalized response of the
  // smoothed bump, t^2 * sigma^4 / (sigma^2 + 2 t)^4, over a dense scale grid.
  double best_t = 0.0, best_value = -1.0;
  const int samples = 50000;
  for (int i = 0; i < samples; ++i) {
    const double t = 1e-5 * std::pow(1.0 / 1e-5, static_cast<double>(i) / (samples - 1));
    const double s2 = sigma * sigma + 2.0 * t;
    const double value = t * t * std::pow(sigma, 4.0) / std::pow(s2, 4.0);
    if (value > best_value) {
      best_value = value;
      best_t = t;
    }
  }
  const double oracle_radius = std::sqrt(2.0 * best_t);
  const double radius_err = std::abs(blob.radius - oracle_radius) / oracle_radius;

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
  note = "center err " + format_metric(center_err / mean_edge) + " edges, radius " +
         format_metric(blob.radius) + " vs oracle " + format_metric(oracle_radius) + " (" +
         format_metric(100.0 * radius_err) + "%), " + format_metric(seconds) +
         " s (budget 60 s)";
  return radius_err <= 0.30 && seconds < 60.0;
}

// ---------------------------------------------------------------------------
// Criterion 6: the Hessian estimator commutes with global signal scaling, and
// detection with a co-scaled threshold finds the same (vertex, level) set.
// ---------------------------------------------------------------------------
bool signal_scaling_invariance(std::string& note) {
  const int n = 32;
  const TriMesh grid = planar_grid(n, 1.0);
  const Vec3 center = grid.position(16 * n + 16);
  const SyntheticScene scene = plant_gaussians(grid, {{center, 0.1, 0, 1.0}});

  // Direct scaling of the estimator on the raw signal.
  const FramePtr frames = frames_of(grid);
  const HessianField base = covariant_hessian(grid, scene.signal, frames);
  for (double mu : {0.1, 3.0, 100.0}) {
    const HessianField scaled = covariant_hessian(grid, mu * scene.signal, frames);
    const double scale = std::max(1.0, mu * base.entries.cwiseAbs().maxCoeff());
    for (int v = 0; v < grid.num_vertices(); ++v) {
      if (!base.is_valid(v)) continue;
      const double dev = (scaled.entries.row(v) - mu * base.entries.row(v)).cwiseAbs().maxCoeff();
      if (dev > 1e-10 * scale) {
        note = "Hessian scaling deviation " + format_metric(dev / scale) + " at mu " +
               format_metric(mu);
        return false;
      }
    }
  }

  // Full pipeline: co-scaling the threshold leaves the blob set unchanged.
  const PipelineOut ref = run_pipeline(scene.mesh, scene.signal, ResponseKind::scalar_detsum, 8);
  DetectorConfig config;
  config.detect_minima = false;
  config.threshold = 0.05 * field_peak(ref.field);
  const auto ref_keys = blob_keys(detect_blobs(ref.field, scene.mesh, ref.grid, config));
  if (ref_keys.empty()) {
    note = "reference run found no blobs";
    return false;
  }

  for (double mu : {0.1, 3.0, 100.0}) {
    const MatX scaled_signal = mu * scene.signal;
    const PipelineOut run = run_pipeline(scene.mesh, scaled_signal, ResponseKind::scalar_detsum, 8);
    DetectorConfig scaled_config = config;
    scaled_config.threshold = config.threshold * mu * mu;  // det response scales with mu^2
    const auto keys = blob_keys(detect_blobs(run.field, scene.mesh, run.grid, scaled_config));
    if (keys != ref_keys) {
      note = "blob set changed at mu " + format_metric(mu);
      return false;
    }
  }

  note = "mu in {0.1, 3, 100}";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: two end-to-end CLI detect runs on identical inputs produce
// byte-identical blob outputs (manifests are compared with the wall-clock
// timing block removed).
// ---------------------------------------------------------------------------
bool deterministic_detect_runs(std::string& note) {
  const char* cli = std::getenv("RBD_CLI");
  if (cli == nullptr) {
    note = "RBD_CLI is not set";
    return false;
  }

  TempTree tmp;
  const fs::path scene = tmp / "scene";
  const std::string synth = std::string("\"") + cli + "\" synth plane --n 32 --bump 0.1 --out " +
                            scene.string() + " > /dev/null 2>&1";
  if (run_command(synth) != 0) {
    note = "synth run failed";
    return false;
  }

  const auto detect = [&](const fs::path& out) {
    const std::string cmd = std::string("\"") + cli + "\" detect --mesh " +
                            (scene / "mesh.off").string() + " --signal " +
                            (scene / "signal.csv").string() + " --levels 8 --out " + out.string() +
                            " > /dev/null 2>&1";
    return run_command(cmd);
  };
  // The same command, twice, into the same directory: every output except the
  // wall-clock entry in the manifest must come back byte for byte.
  const fs::path out = tmp / "out";
  if (detect(out) != 0) {
    note = "detect run failed";
    return false;
  }
  const std::string json1 = slurp(out / "blobs.json");
  const std::string csv1 = slurp(out / "blobs.csv");
  const std::string manifest1 = slurp(out / "manifest.json");
  if (detect(out) != 0) {
    note = "second detect run failed";
    return false;
  }

  if (json1 != slurp(out / "blobs.json")) {
    note = "blobs.json differs between runs";
    return false;
  }
  if (csv1 != slurp(out / "blobs.csv")) {
    note = "blobs.csv differs between runs";
    return false;
  }

  auto without_timing = [](const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("timing_ms");
    return j.dump();
  };
  if (without_timing(manifest1) != without_timing(slurp(out / "manifest.json"))) {
    note = "manifest differs beyond timing";
    return false;
  }

  note = "blobs.json, blobs.csv byte-identical; manifest identical modulo timing";
  return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: a two-channel scene with one bump per channel yields
// detections near both centers, and permuting the channels changes nothing.
// ---------------------------------------------------------------------------
bool multi_channel_symmetry(std::string& note) {
  const int n = 48;
  const TriMesh grid = planar_grid(n, 1.0);
  const Vec3 c0 = grid.position(14 * n + 14);
  const Vec3 c1 = grid.position(31 * n + 33);
  SyntheticScene scene = plant_gaussians(
      grid, {{c0, 0.08, 0, 1.0}, {c1, 0.1, 1, 1.0}});

  const PipelineOut out = run_pipeline(scene.mesh, scene.signal, ResponseKind::scalar_detsum, 10);
  DetectorConfig config;
  config.detect_minima = false;
  config.threshold = 0.05 * field_peak(out.field);
  const std::vector<Blob> blobs = detect_blobs(out.field, scene.mesh, out.grid, config);

  const double mean_edge = grid.mean_edge_length();
  const auto near = [&](const Vec3& target) {
    for (const Blob& b : blobs)
      if ((b.position - target).norm() <= 2.0 * mean_edge) return true;
    return false;
  };
  if (!near(c0) || !near(c1)) {
    note = "missing detection near a planted center (" + std::to_string(blobs.size()) +
           " blobs)";
    return false;
  }

  // Swap the channels and rerun the full pipeline.
  MatX permuted(scene.signal.rows(), 2);
  permuted.col(0) = scene.signal.col(1);
  permuted.col(1) = scene.signal.col(0);
  const PipelineOut swapped = run_pipeline(scene.mesh, permuted, ResponseKind::scalar_detsum, 10);

  const double scale = field_peak(out.field);
  for (int k = 0; k < out.field.levels(); ++k)
    for (int v = 0; v < out.field.num_vertices(); ++v) {
      if (out.field.is_masked(k, v) != swapped.field.is_masked(k, v)) {
        note = "mask changed under channel permutation";
        return false;
      }
      if (out.field.is_masked(k, v)) continue;
      const double a = out.field.values(k, v), b = swapped.field.values(k, v);
      if (std::abs(a - b) > 1e-12 * std::max({std::abs(a), std::abs(b), 1e-12 * scale})) {
        note = "response changed under channel permutation";
        return false;
      }
    }

  const std::vector<Blob> swapped_blobs =
      detect_blobs(swapped.field, scene.mesh, swapped.grid, config);
  if (blob_keys(blobs) != blob_keys(swapped_blobs)) {
    note = "blob set changed under channel permutation";
    return false;
  }

  note = std::to_string(blobs.size()) + " blobs, both centers hit, permutation invariant";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Criterion criteria[] = {
      {"grayscale equivalence", grayscale_equivalence},
      {"double-sum response identity", double_sum_identity},
      {"quadratic Hessian oracle", quadratic_hessian_oracle},
      {"heat kernel oracle", heat_kernel_oracle},
      {"planted bump recovery", planted_bump_recovery},
      {"signal scaling invariance", signal_scaling_invariance},
      {"deterministic detect runs", deterministic_detect_runs},
      {"multi-channel symmetry", multi_channel_symmetry},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string note;
    bool ok = false;
    try {
      ok = criterion.fn(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
      ok = false;
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.name;
    if (!note.empty()) std::cout << " — " << note;
    std::cout << "\n";
    if (!ok) ++failures;
  }

  if (failures > 0) {
    std::cout << failures << " of " << std::size(criteria) << " criteria failed\n";
    return 1;
  }
  std::cout << "all " << std::size(criteria) << " criteria passed\n";
  return 0;
}
