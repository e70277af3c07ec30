#pragma once

#include <vector>

#include "rbd/types.hpp"

namespace rbd {

/// Triangulated 2-manifold (with or without boundary). Immutable after
/// construction; adjacency is precomputed and all topology invariants are
/// checked by create(). Vertex order is preserved from the input.
class TriMesh {
 public:
  /// Validates topology and builds adjacency. Throws TopologyError on
  /// out-of-range indices, repeated vertices inside a face, non-manifold
  /// edges (shared by more than 2 faces) or degenerate faces (area below
  /// 1e-12 times the squared bounding-box diagonal).
  static TriMesh create(PointMat vertices, FaceMat faces);

  int num_vertices() const { return static_cast<int>(vertices_.rows()); }
  int num_faces() const { return static_cast<int>(faces_.rows()); }

  const PointMat& vertices() const { return vertices_; }
  const FaceMat& faces() const { return faces_; }
  Vec3 position(int v) const { return vertices_.row(v).transpose(); }

  /// 1-ring neighbour vertices, ascending order.
  const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
  /// Faces incident to a vertex, ascending order.
  const std::vector<int>& incident_faces(int v) const { return incident_faces_[v]; }

  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  bool is_closed() const { return boundary_edges_ == 0; }

  Vec3 face_normal(int f) const;    // unit normal
  double face_area(int f) const;
  double total_area() const;
  double mean_edge_length() const { return mean_edge_length_; }
  double bbox_diagonal() const { return bbox_diagonal_; }

 private:
  TriMesh() = default;

  PointMat vertices_;
  FaceMat faces_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> incident_faces_;
  std::vector<char> boundary_vertex_;
  int boundary_edges_ = 0;
  double mean_edge_length_ = 0.0;
  double bbox_diagonal_ = 0.0;
};

/// Orthonormal right-handed frame (e1, e2, normal) of the estimated tangent
/// plane at a vertex; e1 x e2 = normal.
struct TangentFrame {
  int vertex = -1;
  Vec3 e1 = Vec3::Zero();
  Vec3 e2 = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
};

/// Frame at one vertex. The normal is the normalized area-weighted average of
/// incident face normals. Throws TopologyError for isolated vertices.
TangentFrame tangent_frame(const TriMesh& mesh, int v);

/// Frames at every vertex.
std::vector<TangentFrame> tangent_frames(const TriMesh& mesh);

/// Cotangent stiffness S plus barycentric lumped mass M (diagonal, stored as
/// a vector). S is symmetric with zero row sums; M entries are positive.
struct LaplaceOperator {
  SparseMat stiffness;
  VecX mass;
};

/// Cotangent discretization: S_ij = -(cot a_ij + cot b_ij)/2 over the angles
/// opposite edge (i,j); S_ii = -sum_j S_ij; M_ii = one third of the incident
/// face area. Cotangents are clamped to [-1e6, 1e6].
LaplaceOperator cotangent_laplacian(const TriMesh& mesh);

}  // namespace rbd
