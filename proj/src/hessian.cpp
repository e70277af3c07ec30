#include "rbd/hessian.hpp"

#include <Eigen/QR>
#include <string>

#include "rbd/error.hpp"

namespace rbd {

namespace {

constexpr double kRankTolerance = 1e-10;

using Decomposition = Eigen::CompleteOrthogonalDecomposition<MatX>;

Decomposition decompose_directions(const Eigen::Matrix3Xd& directions) {
  Decomposition cod;
  cod.setThreshold(kRankTolerance);
  cod.compute(directions.transpose());  // deg x 3
  return cod;
}

Vec3 project_tangent(const Vec3& u, const TangentFrame& frame) {
  return u - frame.normal.dot(u) * frame.normal;
}

}  // namespace

VertexDerivatives directional_derivatives(const TriMesh& mesh,
                                          const Eigen::Ref<const MatX>& level, int v) {
  const auto& ring = mesh.neighbors(v);
  VertexDerivatives d;
  d.neighbors = ring;
  d.directions.resize(3, ring.size());
  d.increments.resize(ring.size(), level.cols());
  for (size_t j = 0; j < ring.size(); ++j) {
    d.directions.col(j) = mesh.position(ring[j]) - mesh.position(v);
    d.increments.row(j) = level.row(ring[j]) - level.row(v);
  }
  return d;
}

Eigen::Matrix3Xd estimate_differential(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                                       int v, const TangentFrame& frame) {
  const VertexDerivatives d = directional_derivatives(mesh, level, v);
  const Decomposition cod = decompose_directions(d.directions);
  if (cod.rank() < 2)
    throw NumericError("differential at vertex " + std::to_string(v) +
                       " is rank-deficient (fewer than 2 independent directions)");

  Eigen::Matrix3Xd dl(3, level.cols());
  for (int c = 0; c < level.cols(); ++c)
    dl.col(c) = project_tangent(cod.solve(d.increments.col(c)), frame);
  return dl;
}

DifferentialField differential_field(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                                     const std::vector<TangentFrame>& frames) {
  const int nv = mesh.num_vertices();
  const int channels = static_cast<int>(level.cols());

  DifferentialField field;
  field.channels = channels;
  field.covectors = MatX::Zero(nv, 3 * channels);
  field.valid.assign(nv, 0);

  for (int v = 0; v < nv; ++v) {
    const VertexDerivatives d = directional_derivatives(mesh, level, v);
    if (d.directions.cols() < 2) continue;
    const Decomposition cod = decompose_directions(d.directions);
    if (cod.rank() < 2) continue;
    for (int c = 0; c < channels; ++c) {
      const Vec3 dl = project_tangent(cod.solve(d.increments.col(c)), frames[v]);
      field.covectors.row(v).segment<3>(3 * c) = dl.transpose();
    }
    field.valid[v] = 1;
  }
  return field;
}

HessianField HessianField::zeros(int vertices, int channels, FramePtr frames) {
  HessianField field;
  field.entries = MatX::Zero(vertices, 3 * channels);
  field.valid.assign(vertices, 1);
  field.channels = channels;
  field.frames = std::move(frames);
  return field;
}

HessianField covariant_hessian(const TriMesh& mesh, const Eigen::Ref<const MatX>& level,
                               const FramePtr& frames) {
  const int nv = mesh.num_vertices();
  const int channels = static_cast<int>(level.cols());
  const DifferentialField dl = differential_field(mesh, level, *frames);

  HessianField field;
  field.entries = MatX::Zero(nv, 3 * channels);
  field.valid.assign(nv, 0);
  field.channels = channels;
  field.frames = frames;

  for (int v = 0; v < nv; ++v) {
    if (!dl.valid[v]) continue;
    const TangentFrame& frame = (*frames)[v];

    std::vector<int> usable;
    for (int u : mesh.neighbors(v))
      if (dl.valid[u]) usable.push_back(u);
    if (usable.size() < 3) continue;

    Eigen::Matrix3Xd directions(3, usable.size());
    for (size_t j = 0; j < usable.size(); ++j)
      directions.col(j) = mesh.position(usable[j]) - mesh.position(v);
    const Decomposition cod = decompose_directions(directions);
    if (cod.rank() < 2) continue;

    for (int c = 0; c < channels; ++c) {
      // Ambient finite differences of the covector field, in frame coordinates.
      MatX rhs(usable.size(), 2);
      for (size_t j = 0; j < usable.size(); ++j) {
        const Vec3 delta = project_tangent(dl.covector(usable[j], c) - dl.covector(v, c), frame);
        rhs(j, 0) = frame.e1.dot(delta);
        rhs(j, 1) = frame.e2.dot(delta);
      }
      const MatX rows = cod.solve(rhs);  // 3 x 2: columns are the frame rows of the differential
      Mat2 h;
      for (int i = 0; i < 2; ++i) {
        const Vec3 g = rows.col(i);
        h(i, 0) = g.dot(frame.e1);
        h(i, 1) = g.dot(frame.e2);
      }
      field.set_matrix(v, c, 0.5 * (h + h.transpose()));
    }
    field.valid[v] = 1;
  }
  return field;
}

std::vector<HessianField> hessian_stack(const TriMesh& mesh, const ScaleSpace& space,
                                        const FramePtr& frames) {
  std::vector<HessianField> stack;
  stack.reserve(space.levels.size());
  for (const MatX& level : space.levels)
    stack.push_back(covariant_hessian(mesh, level, frames));
  return stack;
}

}  // namespace rbd
