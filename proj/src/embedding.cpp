#include "sparsecut/embedding.hpp"

#include <stdexcept>

#include "sparsecut/cover.hpp"

namespace sparsecut {

std::string to_string(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::arv_optimal: return "arv-optimal";
    case EmbeddingKind::integral_cut: return "integral-cut";
    case EmbeddingKind::reduced: return "reduced";
    case EmbeddingKind::embedded: return "embedded";
  }
  return "unknown";
}

EmbeddingKind embedding_kind_from_string(const std::string& s) {
  if (s == "arv-optimal") return EmbeddingKind::arv_optimal;
  if (s == "integral-cut") return EmbeddingKind::integral_cut;
  if (s == "reduced") return EmbeddingKind::reduced;
  if (s == "embedded") return EmbeddingKind::embedded;
  throw std::invalid_argument("unknown embedding kind: " + s);
}

std::string to_string(DistanceKind k) {
  switch (k) {
    case DistanceKind::squared: return "squared";
    case DistanceKind::euclidean: return "euclidean";
    case DistanceKind::sampled: return "sampled";
    case DistanceKind::embedded: return "embedded";
  }
  return "unknown";
}

DistanceKind distance_kind_from_string(const std::string& s) {
  if (s == "squared") return DistanceKind::squared;
  if (s == "euclidean") return DistanceKind::euclidean;
  if (s == "sampled") return DistanceKind::sampled;
  if (s == "embedded") return DistanceKind::embedded;
  throw std::invalid_argument("unknown distance kind: " + s);
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values, DistanceKind kind)
    : values_(std::move(values)), kind_(kind) {
  if (values_.rows() != values_.cols())
    throw std::invalid_argument("distance matrix must be square");
  const int n = static_cast<int>(values_.rows());
  for (int i = 0; i < n; ++i) {
    if (values_(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      if (values_(i, j) != values_(j, i))
        throw std::invalid_argument("distance matrix must be symmetric");
      if (values_(i, j) < 0.0) throw std::invalid_argument("distance matrix must be nonnegative");
    }
  }
}

DistanceMatrix DistanceMatrix::zeros(int n, DistanceKind kind) {
  return DistanceMatrix(Eigen::MatrixXd::Zero(n, n), kind);
}

double DistanceMatrix::pair_sum() const {
  double s = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j) s += values_(i, j);
  return s;
}

namespace {

Eigen::MatrixXd squared_gram_distances(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0;
    for (int j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).squaredNorm();
      d(i, j) = d(j, i) = v;
    }
  }
  return d;
}

}  // namespace

DistanceMatrix squared_distances(const EmbeddingSolution& sol) {
  return DistanceMatrix(squared_gram_distances(sol.vectors), DistanceKind::squared);
}

DistanceMatrix euclidean_distances(const EmbeddingSolution& sol) {
  Eigen::MatrixXd d = squared_gram_distances(sol.vectors).cwiseSqrt();
  return DistanceMatrix(std::move(d), DistanceKind::euclidean);
}

int union_size(const std::vector<VertexSet>& sets, int n) {
  std::vector<char> seen(n, 0);
  int count = 0;
  for (const auto& s : sets)
    for (int v : s)
      if (!seen.at(v)) {
        seen[v] = 1;
        ++count;
      }
  return count;
}

}  // namespace sparsecut
