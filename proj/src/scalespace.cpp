#include "rbd/scalespace.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <map>
#include <memory>
#include <string>

#include "rbd/error.hpp"

namespace rbd {

namespace {

constexpr double kResidualTolerance = 1e-10;

SparseMat diagonal_sparse(const VecX& diag) {
  SparseMat m(diag.size(), diag.size());
  m.reserve(VecX::Constant(diag.size(), 1).cast<int>());
  for (int i = 0; i < diag.size(); ++i) m.insert(i, i) = diag[i];
  m.makeCompressed();
  return m;
}

}  // namespace

ScaleGrid make_scale_grid(double t_min, double t_max, int levels) {
  if (!(t_min > 0.0) || !(t_min < t_max))
    throw UsageError("scale grid requires 0 < t_min < t_max");
  if (levels < 2) throw UsageError("scale grid requires at least 2 levels");

  ScaleGrid grid;
  grid.scales = VecX(levels);
  const double ratio = t_max / t_min;
  for (int k = 0; k < levels; ++k)
    grid.scales[k] = t_min * std::pow(ratio, static_cast<double>(k) / (levels - 1));
  grid.scales[0] = t_min;
  grid.scales[levels - 1] = t_max;
  return grid;
}

ScaleGrid default_scale_grid(const TriMesh& mesh, int levels) {
  const double h = mesh.mean_edge_length();
  const double d = mesh.bbox_diagonal();
  return make_scale_grid(0.5 * h * h, (d / 4.0) * (d / 4.0), levels);
}

ScaleSpace heat_flow(const TriMesh& mesh, const LaplaceOperator& op, const MatX& signal,
                     const ScaleGrid& grid, int substeps) {
  if (signal.rows() != mesh.num_vertices())
    throw UsageError("signal row count does not match vertex count");
  if (!signal.allFinite()) throw UsageError("signal contains non-finite values");
  if (substeps < 1) throw UsageError("heat_flow requires substeps >= 1");
  if (grid.levels() < 2) throw UsageError("heat_flow requires at least 2 scale levels");

  // One factorization per distinct dt, reused across substeps and channels.
  struct ImplicitStep {
    SparseMat system;  // M + dt S
    Eigen::SimplicialLDLT<SparseMat> factorization;
  };
  std::map<double, std::unique_ptr<ImplicitStep>> steps;
  const SparseMat mass = diagonal_sparse(op.mass);

  auto step_for = [&](double dt) -> ImplicitStep& {
    auto it = steps.find(dt);
    if (it == steps.end()) {
      auto step = std::make_unique<ImplicitStep>();
      step->system = mass + dt * op.stiffness;
      step->factorization.compute(step->system);
      if (step->factorization.info() != Eigen::Success)
        throw NumericError("heat_flow: factorization failed for dt=" + std::to_string(dt));
      it = steps.emplace(dt, std::move(step)).first;
    }
    return *it->second;
  };

  ScaleSpace space;
  space.grid = grid;
  space.initial = signal;
  space.levels.reserve(grid.levels());

  MatX current = signal;
  double t_prev = 0.0;
  for (int k = 0; k < grid.levels(); ++k) {
    const double dt = (grid.scale(k) - t_prev) / substeps;
    ImplicitStep& step = step_for(dt);
    for (int s = 0; s < substeps; ++s) {
      const MatX rhs = op.mass.asDiagonal() * current;
      current = step.factorization.solve(rhs);
      for (int c = 0; c < current.cols(); ++c) {
        const double rhs_norm = rhs.col(c).norm();
        const double residual = (step.system * current.col(c) - rhs.col(c)).norm();
        const double relative = rhs_norm > 0.0 ? residual / rhs_norm : residual;
        if (!(relative <= kResidualTolerance) || !current.col(c).allFinite())
          throw NumericError("heat_flow: solve did not converge at level " + std::to_string(k) +
                             ", channel " + std::to_string(c) + ", relative residual " +
                             std::to_string(relative));
      }
    }
    space.levels.push_back(current);
    t_prev = grid.scale(k);
  }
  return space;
}

VecX channel_means(const LaplaceOperator& op, const MatX& values) {
  const double total = op.mass.sum();
  return (values.transpose() * op.mass) / total;
}

}  // namespace rbd
