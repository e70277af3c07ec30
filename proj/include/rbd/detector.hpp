#pragma once

#include <string>
#include <vector>

#include "rbd/mesh.hpp"
#include "rbd/response.hpp"
#include "rbd/scalespace.hpp"
#include "rbd/types.hpp"

namespace rbd {

enum class Polarity { minimum, maximum };

const char* polarity_name(Polarity p);

/// Detected keypoint: a strict spatio-scale extremum of the normalized
/// response. radius = sqrt(2 t).
struct Blob {
  int vertex = -1;
  int level = -1;
  Vec3 position = Vec3::Zero();
  double t = 0.0;
  double radius = 0.0;
  double response = 0.0;
  Polarity polarity = Polarity::maximum;
  ResponseKind kind = ResponseKind::scalar_detsum;
};

struct DetectorConfig {
  double threshold = 0.0;  // absolute, in normalized-response units
  bool detect_minima = true;
  bool detect_maxima = true;
  double suppression_overlap = 0.5;  // in [0, 1]
};

/// Emits (v, t_k) iff the field value is strictly greater (resp. smaller)
/// than at all 1-ring neighbours on levels k-1, k, k+1 and at v itself on
/// k-1, k+1; |value| must reach the threshold. Boundary scale levels never
/// emit. Overlap suppression is applied and the result is sorted by
/// |response| descending (ties by (level, vertex)). Throws UsageError when
/// the field is not scale-normalized.
std::vector<Blob> detect_blobs(const ResponseField& field, const TriMesh& mesh,
                               const ScaleGrid& grid, const DetectorConfig& config = {});

/// Greedy suppression on a |response|-descending list: a blob is dropped when
/// its center lies closer than overlap * (r1 + r2) to an already kept blob.
std::vector<Blob> suppress_overlaps(std::vector<Blob> blobs, double overlap);

}  // namespace rbd
