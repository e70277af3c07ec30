#pragma once

#include <memory>
#include <vector>

#include "rbd/mesh.hpp"
#include "rbd/scalespace.hpp"
#include "rbd/types.hpp"

namespace rbd {

using FramePtr = std::shared_ptr<const std::vector<TangentFrame>>;

/// One-ring finite differences at a vertex: directions z_j = p_{n_j} - p_v
/// (3 x deg) paired with un-normalized increments L(n_j) - L(v) (deg x m).
struct VertexDerivatives {
  std::vector<int> neighbors;
  Eigen::Matrix3Xd directions;
  MatX increments;
};

VertexDerivatives directional_derivatives(const TriMesh& mesh,
                                          const Eigen::Ref<const MatX>& level, int v);

/// Per-channel ambient differential dL at one vertex: least-squares solution
/// of Z^T dL = increments, then projected onto the tangent plane of `frame`.
/// Columns are channels. Throws NumericError when the direction matrix has
/// rank < 2.
Eigen::Matrix3Xd estimate_differential(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                                       int v, const TangentFrame& frame);

/// Batched ambient differentials; vertices whose directions are
/// rank-deficient are flagged invalid instead of throwing.
struct DifferentialField {
  MatX covectors;  // V x 3m, per channel [dx dy dz]
  std::vector<char> valid;
  int channels = 0;

  Vec3 covector(int v, int channel) const {
    return covectors.row(v).segment<3>(3 * channel).transpose();
  }
};

DifferentialField differential_field(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                                     const std::vector<TangentFrame>& frames);

/// Per-vertex, per-channel symmetric 2x2 Hessians H(e_i, e_j) in the vertex
/// tangent frame. Entries rows are [h11 h12 h22] per channel. Vertices with
/// fewer than 3 usable neighbours (or rank-deficient stencils) are flagged
/// invalid and excluded from detection.
struct HessianField {
  MatX entries;  // V x 3m
  std::vector<char> valid;
  int channels = 0;
  FramePtr frames;

  int num_vertices() const { return static_cast<int>(entries.rows()); }
  bool is_valid(int v) const { return valid[v] != 0; }

  Mat2 matrix(int v, int channel) const {
    Mat2 h;
    const auto row = entries.row(v).segment<3>(3 * channel);
    h << row[0], row[1], row[1], row[2];
    return h;
  }

  void set_matrix(int v, int channel, const Mat2& h) {
    entries.row(v).segment<3>(3 * channel) << h(0, 0), 0.5 * (h(0, 1) + h(1, 0)), h(1, 1);
  }

  static HessianField zeros(int vertices, int channels, FramePtr frames = nullptr);
};

/// Discrete covariant Hessian of one scale level: estimates the differential
/// field, takes ambient finite differences of the neighbour covectors,
/// projects them onto the tangent plane, solves the overdetermined system for
/// the covariant differential and restricts it to the frame. The result is
/// symmetrized.
HessianField covariant_hessian(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                               const FramePtr& frames);

/// covariant_hessian applied to every level of a scale-space.
std::vector<HessianField> hessian_stack(const TriMesh& mesh, const ScaleSpace& space,
                                        const FramePtr& frames);

}  // namespace rbd
