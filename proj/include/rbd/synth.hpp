#pragma once

#include <vector>

#include "rbd/mesh.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// One planted Gaussian bump: signal(v) += amplitude * exp(-|p_v - center|^2 / (2 sigma^2))
/// on the given channel. Distance is ambient (chordal).
struct GaussianSpec {
  Vec3 center = Vec3::Zero();
  double sigma = 1.0;
  int channel = 0;
  double amplitude = 1.0;
};

struct SyntheticScene {
  TriMesh mesh;
  MatX signal;
  std::vector<GaussianSpec> ground_truth;
};

/// n x n vertex grid on z=0 over [0, extent]^2, diagonal-split into
/// 2 (n-1)^2 triangles. Requires n >= 2.
TriMesh planar_grid(int n, double extent);

/// Icosahedron subdivided `subdiv` times (subdiv <= 7), vertices projected to
/// radius. V = 10 * 4^subdiv + 2.
TriMesh icosphere(int subdiv, double radius = 1.0);

/// Evaluates the planted bumps on the mesh. Channel count defaults to
/// 1 + max channel index of the spec (at least 1).
SyntheticScene plant_gaussians(TriMesh mesh, std::vector<GaussianSpec> spec, int channels = -1);

}  // namespace rbd
