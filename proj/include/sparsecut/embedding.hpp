#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace sparsecut {

enum class EmbeddingKind { arv_optimal, integral_cut, reduced, embedded };

std::string to_string(EmbeddingKind k);
EmbeddingKind embedding_kind_from_string(const std::string& s);

/// One row per vertex; all rows share dimension m = vectors.cols().
struct EmbeddingSolution {
  Eigen::MatrixXd vectors;
  double objective = 0;
  EmbeddingKind kind = EmbeddingKind::arv_optimal;
  double tolerance = 0;

  int n() const { return static_cast<int>(vectors.rows()); }
  int dim() const { return static_cast<int>(vectors.cols()); }
};

enum class DistanceKind : std::uint32_t { squared = 0, euclidean = 1, sampled = 2, embedded = 3 };

std::string to_string(DistanceKind k);
DistanceKind distance_kind_from_string(const std::string& s);

/// Symmetric n x n matrix with zero diagonal and a kind tag.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(Eigen::MatrixXd values, DistanceKind kind);

  static DistanceMatrix zeros(int n, DistanceKind kind);

  int n() const { return static_cast<int>(values_.rows()); }
  DistanceKind kind() const { return kind_; }
  double operator()(int u, int v) const { return values_(u, v); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// Sum over unordered pairs u < v.
  double pair_sum() const;

 private:
  Eigen::MatrixXd values_;
  DistanceKind kind_ = DistanceKind::squared;
};

DistanceMatrix squared_distances(const EmbeddingSolution& sol);
DistanceMatrix euclidean_distances(const EmbeddingSolution& sol);

}  // namespace sparsecut
