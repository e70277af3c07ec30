#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rbd/hessian.hpp"
#include "rbd/scalespace.hpp"
#include "rbd/types.hpp"

namespace rbd {

enum class ResponseKind { scalar_detsum, scalar_theorem, mean };

const char* response_kind_name(ResponseKind kind);
ResponseKind parse_response_kind(const std::string& name);

/// Blob response sampled on (level, vertex). Vertices with an invalid Hessian
/// carry NaN as the masked marker.
struct ResponseField {
  ResponseKind kind = ResponseKind::scalar_detsum;
  MatX values;  // K x V
  bool normalized = false;

  int levels() const { return static_cast<int>(values.rows()); }
  int num_vertices() const { return static_cast<int>(values.cols()); }
  bool is_masked(int k, int v) const { return !std::isfinite(values(k, v)); }
};

/// sum_a det H^a. The grayscale (m=1) specialization is det H.
ResponseField br_scalar_detsum(const std::vector<HessianField>& stack);

/// sum_{i,j} (<H_ij, H_ji> - <H_ii, H_jj>) with the Euclidean codomain inner
/// product; equals -2 times br_scalar_detsum for a 2-dimensional domain.
ResponseField br_scalar_theorem(const std::vector<HessianField>& stack);

/// ||(tr H^1, ..., tr H^m)||, always >= 0. The grayscale specialization is
/// |tr H|.
ResponseField br_mean(const std::vector<HessianField>& stack);

ResponseField compute_response(ResponseKind kind, const std::vector<HessianField>& stack);

/// Multiplies level k by t_k^2 (scalar kinds) or t_k (mean kind). Throws
/// UsageError when the field is already normalized.
ResponseField scale_normalize(ResponseField field, const ScaleGrid& grid);

}  // namespace rbd
