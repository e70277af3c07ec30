#include "rbd/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "rbd/error.hpp"

namespace rbd {

namespace {

constexpr double kDegenerateAreaFactor = 1e-12;
constexpr double kCotClamp = 1e6;

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

TriMesh TriMesh::create(PointMat vertices, FaceMat faces) {
  TriMesh mesh;
  mesh.vertices_ = std::move(vertices);
  mesh.faces_ = std::move(faces);

  const int nv = mesh.num_vertices();
  const int nf = mesh.num_faces();

  if (nv == 0) throw TopologyError("mesh has no vertices");
  if (!mesh.vertices_.allFinite()) throw TopologyError("non-finite vertex position");

  Vec3 lo = mesh.vertices_.colwise().minCoeff().transpose();
  Vec3 hi = mesh.vertices_.colwise().maxCoeff().transpose();
  mesh.bbox_diagonal_ = (hi - lo).norm();
  const double degenerate_area = kDegenerateAreaFactor * mesh.bbox_diagonal_ * mesh.bbox_diagonal_;

  for (int f = 0; f < nf; ++f) {
    const int i = mesh.faces_(f, 0), j = mesh.faces_(f, 1), k = mesh.faces_(f, 2);
    if (i < 0 || i >= nv || j < 0 || j >= nv || k < 0 || k >= nv)
      throw TopologyError("face " + std::to_string(f) + " has out-of-range vertex index");
    if (i == j || j == k || i == k)
      throw TopologyError("face " + std::to_string(f) + " repeats a vertex");
    if (triangle_area(mesh.position(i), mesh.position(j), mesh.position(k)) <= degenerate_area)
      throw TopologyError("face " + std::to_string(f) + " is degenerate (area below tolerance)");
  }

  // Undirected edge -> incident face count; > 2 is non-manifold.
  std::map<std::pair<int, int>, int> edge_count;
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      int a = mesh.faces_(f, c), b = mesh.faces_(f, (c + 1) % 3);
      if (a > b) std::swap(a, b);
      int count = ++edge_count[{a, b}];
      if (count > 2)
        throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") is non-manifold (shared by " + std::to_string(count) + " faces)");
    }
  }

  mesh.neighbors_.assign(nv, {});
  mesh.incident_faces_.assign(nv, {});
  mesh.boundary_vertex_.assign(nv, 0);

  double edge_length_sum = 0.0;
  for (const auto& [edge, count] : edge_count) {
    mesh.neighbors_[edge.first].push_back(edge.second);
    mesh.neighbors_[edge.second].push_back(edge.first);
    edge_length_sum += (mesh.position(edge.first) - mesh.position(edge.second)).norm();
    if (count == 1) {
      ++mesh.boundary_edges_;
      mesh.boundary_vertex_[edge.first] = 1;
      mesh.boundary_vertex_[edge.second] = 1;
    }
  }
  mesh.mean_edge_length_ =
      edge_count.empty() ? 0.0 : edge_length_sum / static_cast<double>(edge_count.size());

  for (int f = 0; f < nf; ++f)
    for (int c = 0; c < 3; ++c) mesh.incident_faces_[mesh.faces_(f, c)].push_back(f);

  for (auto& n : mesh.neighbors_) std::sort(n.begin(), n.end());
  return mesh;
}

Vec3 TriMesh::face_normal(int f) const {
  const Vec3 a = position(faces_(f, 0));
  const Vec3 b = position(faces_(f, 1));
  const Vec3 c = position(faces_(f, 2));
  return (b - a).cross(c - a).normalized();
}

double TriMesh::face_area(int f) const {
  return triangle_area(position(faces_(f, 0)), position(faces_(f, 1)), position(faces_(f, 2)));
}

double TriMesh::total_area() const {
  double area = 0.0;
  for (int f = 0; f < num_faces(); ++f) area += face_area(f);
  return area;
}

TangentFrame tangent_frame(const TriMesh& mesh, int v) {
  const auto& incident = mesh.incident_faces(v);
  if (incident.empty())
    throw TopologyError("vertex " + std::to_string(v) + " has no incident faces");

  Vec3 normal = Vec3::Zero();
  for (int f : incident) normal += mesh.face_area(f) * mesh.face_normal(f);
  const double len = normal.norm();
  if (len == 0.0)
    throw NumericError("degenerate normal at vertex " + std::to_string(v));
  normal /= len;

  // Complete to a right-handed triple; seed with the least-aligned axis.
  int axis = 0;
  normal.cwiseAbs().minCoeff(&axis);
  Vec3 e1 = Vec3::Unit(axis);
  e1 = (e1 - e1.dot(normal) * normal).normalized();
  const Vec3 e2 = normal.cross(e1);

  TangentFrame frame;
  frame.vertex = v;
  frame.e1 = e1;
  frame.e2 = e2;
  frame.normal = normal;
  return frame;
}

std::vector<TangentFrame> tangent_frames(const TriMesh& mesh) {
  std::vector<TangentFrame> frames;
  frames.reserve(mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) frames.push_back(tangent_frame(mesh, v));
  return frames;
}

LaplaceOperator cotangent_laplacian(const TriMesh& mesh) {
  const int nv = mesh.num_vertices();
  LaplaceOperator op;
  op.mass = VecX::Zero(nv);

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<size_t>(mesh.num_faces()) * 12);

  for (int f = 0; f < mesh.num_faces(); ++f) {
    const int i0 = mesh.faces()(f, 0), i1 = mesh.faces()(f, 1), i2 = mesh.faces()(f, 2);
    const Vec3 p0 = mesh.position(i0), p1 = mesh.position(i1), p2 = mesh.position(i2);
    const double area = mesh.face_area(f);
    op.mass[i0] += area / 3.0;
    op.mass[i1] += area / 3.0;
    op.mass[i2] += area / 3.0;

    // Corner c contributes half its cotangent to the opposite edge.
    const int idx[3] = {i0, i1, i2};
    const Vec3 pos[3] = {p0, p1, p2};
    for (int c = 0; c < 3; ++c) {
      const Vec3 u = pos[(c + 1) % 3] - pos[c];
      const Vec3 w = pos[(c + 2) % 3] - pos[c];
      double cot = u.dot(w) / u.cross(w).norm();
      cot = std::clamp(cot, -kCotClamp, kCotClamp);
      const double half_cot = 0.5 * cot;
      const int a = idx[(c + 1) % 3], b = idx[(c + 2) % 3];
      triplets.emplace_back(a, b, -half_cot);
      triplets.emplace_back(b, a, -half_cot);
      triplets.emplace_back(a, a, half_cot);
      triplets.emplace_back(b, b, half_cot);
    }
  }

  for (int v = 0; v < nv; ++v)
    if (op.mass[v] <= 0.0)
      throw TopologyError("vertex " + std::to_string(v) + " has no incident faces (zero mass)");

  op.stiffness = SparseMat(nv, nv);
  op.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  op.stiffness.makeCompressed();
  return op;
}

}  // namespace rbd
