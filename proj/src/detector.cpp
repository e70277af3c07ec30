#include "rbd/detector.hpp"

#include <algorithm>
#include <cmath>

#include "rbd/error.hpp"

namespace rbd {

namespace {

// Strict comparison against every competitor in the spatio-scale
// neighbourhood: 1-ring neighbours on levels k-1, k, k+1 plus the vertex
// itself on k-1 and k+1. Masked competitors (NaN) fail the comparison.
template <typename Better>
bool is_strict_extremum(const ResponseField& field, const TriMesh& mesh, int k, int v,
                        Better&& better) {
  const double value = field.values(k, v);
  for (int dk = -1; dk <= 1; ++dk) {
    const int kk = k + dk;
    if (dk != 0 && !better(value, field.values(kk, v))) return false;
    for (int u : mesh.neighbors(v))
      if (!better(value, field.values(kk, u))) return false;
  }
  return true;
}

}  // namespace

const char* polarity_name(Polarity p) {
  return p == Polarity::minimum ? "min" : "max";
}

std::vector<Blob> detect_blobs(const ResponseField& field, const TriMesh& mesh,
                               const ScaleGrid& grid, const DetectorConfig& config) {
  if (!field.normalized) throw UsageError("detect_blobs requires a scale-normalized field");
  if (field.num_vertices() != mesh.num_vertices())
    throw UsageError("response field vertex count does not match mesh");
  if (field.levels() != grid.levels())
    throw UsageError("response field level count does not match scale grid");
  if (!config.detect_minima && !config.detect_maxima)
    throw UsageError("at least one polarity flag must be set");
  if (config.threshold < 0.0) throw UsageError("threshold must be non-negative");
  if (config.suppression_overlap < 0.0 || config.suppression_overlap > 1.0)
    throw UsageError("suppression_overlap must lie in [0, 1]");

  const auto greater = [](double a, double b) { return a > b; };
  const auto less = [](double a, double b) { return a < b; };

  std::vector<Blob> blobs;
  for (int k = 1; k + 1 < field.levels(); ++k) {
    for (int v = 0; v < field.num_vertices(); ++v) {
      const double value = field.values(k, v);
      if (!std::isfinite(value) || std::abs(value) < config.threshold) continue;

      Polarity polarity;
      if (config.detect_maxima && is_strict_extremum(field, mesh, k, v, greater))
        polarity = Polarity::maximum;
      else if (config.detect_minima && is_strict_extremum(field, mesh, k, v, less))
        polarity = Polarity::minimum;
      else
        continue;

      Blob blob;
      blob.vertex = v;
      blob.level = k;
      blob.position = mesh.position(v);
      blob.t = grid.scale(k);
      blob.radius = std::sqrt(2.0 * blob.t);
      blob.response = value;
      blob.polarity = polarity;
      blob.kind = field.kind;
      blobs.push_back(blob);
    }
  }

  std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
    if (std::abs(a.response) != std::abs(b.response))
      return std::abs(a.response) > std::abs(b.response);
    if (a.level != b.level) return a.level < b.level;
    return a.vertex < b.vertex;
  });
  return suppress_overlaps(std::move(blobs), config.suppression_overlap);
}

std::vector<Blob> suppress_overlaps(std::vector<Blob> blobs, double overlap) {
  std::vector<Blob> kept;
  kept.reserve(blobs.size());
  for (const Blob& blob : blobs) {
    bool overlaps = false;
    for (const Blob& k : kept) {
      if ((blob.position - k.position).norm() < overlap * (blob.radius + k.radius)) {
        overlaps = true;
        break;
      }
    }
    if (!overlaps) kept.push_back(blob);
  }
  return kept;
}

}  // namespace rbd
