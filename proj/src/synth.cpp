#include "rbd/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>

#include "rbd/error.hpp"

namespace rbd {

TriMesh planar_grid(int n, double extent) {
  if (n < 2) throw UsageError("planar_grid requires n >= 2");
  if (!(extent > 0.0)) throw UsageError("planar_grid requires extent > 0");

  PointMat vertices(n * n, 3);
  const double h = extent / (n - 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) vertices.row(j * n + i) << i * h, j * h, 0.0;

  FaceMat faces(2 * (n - 1) * (n - 1), 3);
  int f = 0;
  for (int j = 0; j + 1 < n; ++j) {
    for (int i = 0; i + 1 < n; ++i) {
      const int v00 = j * n + i, v10 = j * n + i + 1;
      const int v01 = (j + 1) * n + i, v11 = (j + 1) * n + i + 1;
      faces.row(f++) << v00, v10, v11;
      faces.row(f++) << v00, v11, v01;
    }
  }
  return TriMesh::create(std::move(vertices), std::move(faces));
}

TriMesh icosphere(int subdiv, double radius) {
  if (subdiv < 0 || subdiv > 7) throw UsageError("icosphere requires 0 <= subdiv <= 7");
  if (!(radius > 0.0)) throw UsageError("icosphere requires radius > 0");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdiv; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int id = static_cast<int>(verts.size());
      verts.push_back(0.5 * (verts[a] + verts[b]));
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }

  PointMat vertices(verts.size(), 3);
  for (size_t v = 0; v < verts.size(); ++v)
    vertices.row(v) = (radius * verts[v].normalized()).transpose();
  FaceMat faces(tris.size(), 3);
  for (size_t f = 0; f < tris.size(); ++f)
    faces.row(f) << tris[f][0], tris[f][1], tris[f][2];
  return TriMesh::create(std::move(vertices), std::move(faces));
}

SyntheticScene plant_gaussians(TriMesh mesh, std::vector<GaussianSpec> spec, int channels) {
  int max_channel = -1;
  for (const auto& g : spec) {
    if (g.channel < 0) throw UsageError("gaussian channel must be non-negative");
    if (!(g.sigma > 0.0)) throw UsageError("gaussian sigma must be positive");
    max_channel = std::max(max_channel, g.channel);
  }
  if (channels < 0) channels = std::max(1, max_channel + 1);
  if (max_channel >= channels) throw UsageError("gaussian channel exceeds channel count");

  SyntheticScene scene{std::move(mesh), MatX::Zero(0, 0), std::move(spec)};
  scene.signal = MatX::Zero(scene.mesh.num_vertices(), channels);
  for (const auto& g : scene.ground_truth) {
    const double inv = 1.0 / (2.0 * g.sigma * g.sigma);
    for (int v = 0; v < scene.mesh.num_vertices(); ++v) {
      const double d2 = (scene.mesh.position(v) - g.center).squaredNorm();
      scene.signal(v, g.channel) += g.amplitude * std::exp(-d2 * inv);
    }
  }
  return scene;
}

}  // namespace rbd
