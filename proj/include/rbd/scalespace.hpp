#pragma once

#include <vector>

#include "rbd/mesh.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// Strictly increasing positive scales t_1 < ... < t_K (units length^2).
struct ScaleGrid {
  VecX scales;

  int levels() const { return static_cast<int>(scales.size()); }
  double scale(int k) const { return scales[k]; }
};

/// Geometric progression t_k = t_min * (t_max/t_min)^((k-1)/(K-1)).
/// Requires 0 < t_min < t_max and K >= 2.
ScaleGrid make_scale_grid(double t_min, double t_max, int levels);

/// Grid spanning sub-edge to quarter-object blobs:
/// t_min = mean_edge^2 / 2, t_max = (bbox_diagonal/4)^2.
ScaleGrid default_scale_grid(const TriMesh& mesh, int levels = 12);

/// Smoothed signal per scale. initial is the raw signal at t = 0; level k
/// holds L(., t_k).
struct ScaleSpace {
  ScaleGrid grid;
  MatX initial;
  std::vector<MatX> levels;

  const MatX& level(int k) const { return levels[k]; }
};

/// Integrates the smoothing flow M dL/dt = -S L channel-wise: each level is
/// reached from the previous by `substeps` implicit-Euler solves of
/// (M + dt S) L_next = M L_prev. Factorizations are reused across channels;
/// every solve must reach relative residual <= 1e-10 or NumericError is
/// thrown with level, channel and residual.
ScaleSpace heat_flow(const TriMesh& mesh, const LaplaceOperator& op, const MatX& signal,
                     const ScaleGrid& grid, int substeps = 4);

/// Lumped-mass-weighted channel means sum(M_ii * L_i) / sum(M_ii).
VecX channel_means(const LaplaceOperator& op, const MatX& values);

}  // namespace rbd
