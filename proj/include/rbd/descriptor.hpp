#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rbd/detector.hpp"
#include "rbd/types.hpp"

namespace rbd {

/// Unordered blob pair, endpoints ordered by radius (r1 <= r2); responses
/// follow the radius ordering.
struct BlobPairFeature {
  double distance = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double resp1 = 0.0;
  double resp2 = 0.0;
  Polarity pol1 = Polarity::maximum;
  Polarity pol2 = Polarity::maximum;

  static constexpr int kDims = 5;
  Eigen::Matrix<double, kDims, 1> vector() const {
    Eigen::Matrix<double, kDims, 1> v;
    v << distance, r1, r2, resp1, resp2;
    return v;
  }
};

/// All unordered pairs when their count stays within max_pairs, otherwise the
/// pairs among the max_pairs strongest blobs by |response|. 0 or 1 blobs give
/// an empty list.
std::vector<BlobPairFeature> make_pairs(const std::vector<Blob>& blobs, int max_pairs = 64);

/// K-means codebook over z-scored pair features.
struct Codebook {
  int words = 0;
  VecX means;  // per-dimension normalization
  VecX stds;
  MatX centroids;  // words x dims, in normalized space
};

/// Fits the z-score normalization on the corpus and runs seeded
/// k-means++ (at most 100 Lloyd iterations or relative inertia change below
/// 1e-6). Deterministic given (corpus order, seed). Throws
/// InsufficientDataError when the corpus has fewer than `words` features.
Codebook train_codebook(const std::vector<BlobPairFeature>& corpus, int words, std::uint64_t seed);

/// Nearest-centroid histogram, L1-normalized; ties go to the lowest centroid
/// index. Empty input gives the all-zero vector.
VecX encode(const std::vector<BlobPairFeature>& features, const Codebook& codebook);

void save_codebook(const std::filesystem::path& path, const Codebook& codebook);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace rbd
