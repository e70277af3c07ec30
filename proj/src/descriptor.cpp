#include "rbd/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "rbd/error.hpp"

namespace rbd {

namespace {

BlobPairFeature featurize(const Blob& a, const Blob& b) {
  // Radius-ordered endpoints, ties broken by vertex index for determinism.
  const bool a_first = a.radius < b.radius || (a.radius == b.radius && a.vertex <= b.vertex);
  const Blob& small = a_first ? a : b;
  const Blob& large = a_first ? b : a;

  BlobPairFeature f;
  f.distance = (a.position - b.position).norm();
  f.r1 = small.radius;
  f.r2 = large.radius;
  f.resp1 = small.response;
  f.resp2 = large.response;
  f.pol1 = small.polarity;
  f.pol2 = large.polarity;
  return f;
}

MatX normalized_features(const std::vector<BlobPairFeature>& features, const Codebook& codebook) {
  MatX points(features.size(), BlobPairFeature::kDims);
  for (size_t i = 0; i < features.size(); ++i)
    points.row(i) =
        ((features[i].vector() - codebook.means).array() / codebook.stds.array()).transpose();
  return points;
}

int nearest_centroid(const Codebook& codebook, const Eigen::RowVectorXd& point) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int w = 0; w < codebook.words; ++w) {
    const double dist = (codebook.centroids.row(w) - point).squaredNorm();
    if (dist < best_dist) {  // strict: ties keep the lowest index
      best_dist = dist;
      best = w;
    }
  }
  return best;
}

}  // namespace

std::vector<BlobPairFeature> make_pairs(const std::vector<Blob>& blobs, int max_pairs) {
  if (max_pairs < 0) throw UsageError("max_pairs must be non-negative");
  std::vector<BlobPairFeature> pairs;
  if (blobs.size() < 2) return pairs;

  const size_t n = blobs.size();
  std::vector<const Blob*> selected;
  if (n * (n - 1) / 2 <= static_cast<size_t>(max_pairs)) {
    for (const Blob& b : blobs) selected.push_back(&b);
  } else {
    std::vector<const Blob*> sorted;
    for (const Blob& b : blobs) sorted.push_back(&b);
    std::stable_sort(sorted.begin(), sorted.end(), [](const Blob* a, const Blob* b) {
      return std::abs(a->response) > std::abs(b->response);
    });
    sorted.resize(std::min<size_t>(sorted.size(), static_cast<size_t>(max_pairs)));
    selected = std::move(sorted);
  }

  for (size_t i = 0; i < selected.size(); ++i)
    for (size_t j = i + 1; j < selected.size(); ++j)
      pairs.push_back(featurize(*selected[i], *selected[j]));
  return pairs;
}

Codebook train_codebook(const std::vector<BlobPairFeature>& corpus, int words,
                        std::uint64_t seed) {
  if (words < 2) throw UsageError("codebook requires at least 2 words");
  if (static_cast<int>(corpus.size()) < words)
    throw InsufficientDataError("codebook with " + std::to_string(words) +
                                " words needs at least as many pair features, got " +
                                std::to_string(corpus.size()));

  const int dims = BlobPairFeature::kDims;
  MatX raw(corpus.size(), dims);
  for (size_t i = 0; i < corpus.size(); ++i) raw.row(i) = corpus[i].vector().transpose();

  Codebook codebook;
  codebook.words = words;
  codebook.means = raw.colwise().mean().transpose();
  codebook.stds = VecX(dims);
  for (int d = 0; d < dims; ++d) {
    const double var = (raw.col(d).array() - codebook.means[d]).square().mean();
    const double sd = std::sqrt(var);
    codebook.stds[d] = sd > 1e-12 ? sd : 1.0;  // constant dimensions stay inert
  }

  MatX points(raw.rows(), dims);
  for (int i = 0; i < raw.rows(); ++i)
    points.row(i) = ((raw.row(i).transpose() - codebook.means).array() / codebook.stds.array())
                        .transpose();

  const int n = static_cast<int>(points.rows());
  std::mt19937_64 rng(seed);

  // k-means++ seeding.
  MatX centroids(words, dims);
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  {
    std::uniform_int_distribution<int> first(0, n - 1);
    centroids.row(0) = points.row(first(rng));
    for (int w = 1; w < words; ++w) {
      double total = 0.0;
      for (int i = 0; i < n; ++i) {
        const double d = (points.row(i) - centroids.row(w - 1)).squaredNorm();
        min_dist[i] = std::min(min_dist[i], d);
        total += min_dist[i];
      }
      int pick = 0;
      if (total > 0.0) {
        std::uniform_real_distribution<double> u(0.0, total);
        double target = u(rng), acc = 0.0;
        for (int i = 0; i < n; ++i) {
          acc += min_dist[i];
          if (acc >= target) {
            pick = i;
            break;
          }
        }
      } else {
        std::uniform_int_distribution<int> any(0, n - 1);
        pick = any(rng);
      }
      centroids.row(w) = points.row(pick);
    }
  }

  // Lloyd iterations.
  std::vector<int> assignment(n, 0);
  double prev_inertia = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 100; ++iter) {
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (int w = 0; w < words; ++w) {
        const double d = (points.row(i) - centroids.row(w)).squaredNorm();
        if (d < best_dist) {
          best_dist = d;
          best = w;
        }
      }
      assignment[i] = best;
      inertia += best_dist;
    }

    MatX sums = MatX::Zero(words, dims);
    std::vector<int> counts(words, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(assignment[i]) += points.row(i);
      ++counts[assignment[i]];
    }
    for (int w = 0; w < words; ++w) {
      if (counts[w] > 0) {
        centroids.row(w) = sums.row(w) / counts[w];
      } else {
        // Re-seed an empty cluster at the point farthest from its centroid.
        int farthest = 0;
        double far_dist = -1.0;
        for (int i = 0; i < n; ++i) {
          const double d = (points.row(i) - centroids.row(assignment[i])).squaredNorm();
          if (d > far_dist) {
            far_dist = d;
            farthest = i;
          }
        }
        centroids.row(w) = points.row(farthest);
      }
    }

    if (prev_inertia < std::numeric_limits<double>::infinity()) {
      const double denom = std::max(prev_inertia, 1e-300);
      if (std::abs(prev_inertia - inertia) / denom < 1e-6) break;
    }
    prev_inertia = inertia;
  }

  codebook.centroids = std::move(centroids);
  return codebook;
}

VecX encode(const std::vector<BlobPairFeature>& features, const Codebook& codebook) {
  if (codebook.words < 2) throw UsageError("codebook is not trained");
  VecX histogram = VecX::Zero(codebook.words);
  if (features.empty()) return histogram;

  const MatX points = normalized_features(features, codebook);
  for (int i = 0; i < points.rows(); ++i)
    histogram[nearest_centroid(codebook, points.row(i))] += 1.0;
  return histogram / histogram.sum();
}

void save_codebook(const std::filesystem::path& path, const Codebook& codebook) {
  nlohmann::json j;
  j["W"] = codebook.words;
  j["dims"] = BlobPairFeature::kDims;
  j["means"] = std::vector<double>(codebook.means.begin(), codebook.means.end());
  j["stds"] = std::vector<double>(codebook.stds.begin(), codebook.stds.end());
  std::vector<std::vector<double>> rows;
  for (int w = 0; w < codebook.words; ++w)
    rows.emplace_back(codebook.centroids.row(w).begin(), codebook.centroids.row(w).end());
  j["centroids"] = rows;

  std::ofstream out(path);
  if (!out) throw ParseError(path.string() + ": cannot open for writing");
  out << j.dump(2) << "\n";
}

Codebook load_codebook(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  try {
    Codebook codebook;
    codebook.words = j.at("W").get<int>();
    const int dims = j.at("dims").get<int>();
    if (dims != BlobPairFeature::kDims)
      throw ParseError(path.string() + ": codebook dimension mismatch");
    const auto means = j.at("means").get<std::vector<double>>();
    const auto stds = j.at("stds").get<std::vector<double>>();
    const auto rows = j.at("centroids").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(means.size()) != dims || static_cast<int>(stds.size()) != dims ||
        static_cast<int>(rows.size()) != codebook.words)
      throw ParseError(path.string() + ": codebook shape mismatch");

    codebook.means = Eigen::Map<const VecX>(means.data(), dims);
    codebook.stds = Eigen::Map<const VecX>(stds.data(), dims);
    codebook.centroids.resize(codebook.words, dims);
    for (int w = 0; w < codebook.words; ++w) {
      if (static_cast<int>(rows[w].size()) != dims)
        throw ParseError(path.string() + ": codebook centroid shape mismatch");
      codebook.centroids.row(w) = Eigen::Map<const Eigen::RowVectorXd>(rows[w].data(), dims);
    }
    for (int d = 0; d < dims; ++d)
      if (!(codebook.stds[d] > 0.0))
        throw ParseError(path.string() + ": codebook stds must be positive");
    return codebook;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace rbd
