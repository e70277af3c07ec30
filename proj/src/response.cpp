#include "rbd/response.hpp"

#include <cmath>
#include <limits>

#include "rbd/error.hpp"

namespace rbd {

namespace {

constexpr double kMasked = std::numeric_limits<double>::quiet_NaN();

template <typename VertexValue>
ResponseField map_stack(ResponseKind kind, const std::vector<HessianField>& stack,
                        VertexValue&& value_at) {
  if (stack.empty()) throw UsageError("response requires at least one Hessian level");
  const int nv = stack.front().num_vertices();

  ResponseField field;
  field.kind = kind;
  field.values.resize(stack.size(), nv);
  for (size_t k = 0; k < stack.size(); ++k) {
    const HessianField& h = stack[k];
    for (int v = 0; v < nv; ++v)
      field.values(k, v) = h.is_valid(v) ? value_at(h, v) : kMasked;
  }
  return field;
}

}  // namespace

const char* response_kind_name(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::scalar_detsum: return "detsum";
    case ResponseKind::scalar_theorem: return "theorem";
    case ResponseKind::mean: return "mean";
  }
  return "unknown";
}

ResponseKind parse_response_kind(const std::string& name) {
  if (name == "detsum") return ResponseKind::scalar_detsum;
  if (name == "theorem") return ResponseKind::scalar_theorem;
  if (name == "mean") return ResponseKind::mean;
  throw UsageError("unknown response kind '" + name + "' (expected detsum, theorem or mean)");
}

ResponseField br_scalar_detsum(const std::vector<HessianField>& stack) {
  return map_stack(ResponseKind::scalar_detsum, stack, [](const HessianField& h, int v) {
    double sum = 0.0;
    for (int c = 0; c < h.channels; ++c) sum += h.matrix(v, c).determinant();
    return sum;
  });
}

ResponseField br_scalar_theorem(const std::vector<HessianField>& stack) {
  return map_stack(ResponseKind::scalar_theorem, stack, [](const HessianField& h, int v) {
    double sum = 0.0;
    for (int c = 0; c < h.channels; ++c) {
      const Mat2 m = h.matrix(v, c);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sum += m(i, j) * m(j, i) - m(i, i) * m(j, j);
    }
    return sum;
  });
}

ResponseField br_mean(const std::vector<HessianField>& stack) {
  return map_stack(ResponseKind::mean, stack, [](const HessianField& h, int v) {
    double sum = 0.0;
    for (int c = 0; c < h.channels; ++c) {
      const double trace = h.matrix(v, c).trace();
      sum += trace * trace;
    }
    return std::sqrt(sum);
  });
}

ResponseField compute_response(ResponseKind kind, const std::vector<HessianField>& stack) {
  switch (kind) {
    case ResponseKind::scalar_detsum: return br_scalar_detsum(stack);
    case ResponseKind::scalar_theorem: return br_scalar_theorem(stack);
    case ResponseKind::mean: return br_mean(stack);
  }
  throw UsageError("invalid response kind");
}

ResponseField scale_normalize(ResponseField field, const ScaleGrid& grid) {
  if (field.normalized) throw UsageError("response field is already scale-normalized");
  if (grid.levels() != field.levels())
    throw UsageError("scale grid level count does not match response field");

  for (int k = 0; k < field.levels(); ++k) {
    const double t = grid.scale(k);
    const double factor = field.kind == ResponseKind::mean ? t : t * t;
    field.values.row(k) *= factor;
  }
  field.normalized = true;
  return field;
}

}  // namespace rbd
