#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

namespace sparsecut {

using Rational = boost::rational<std::int64_t>;

/// Sorted list of distinct vertex ids.
using VertexSet = std::vector<int>;

struct Edge {
  int u;
  int v;  // u < v
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected r-regular graph. Immutable after construction.
class Graph {
 public:
  /// Throws std::invalid_argument unless the edge list describes a simple
  /// regular graph on n >= 2 vertices with degree >= 1.
  Graph(int n, std::vector<std::pair<int, int>> edges);

  /// Text format: header "n r m", then m lines "u v" (0-based).
  /// Throws ParseError carrying the offending line number.
  static Graph parse(std::istream& in);
  static Graph load(const std::string& path);
  std::string to_text() const;

  int n() const { return n_; }
  int degree() const { return r_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  bool adjacent(int u, int v) const;

  /// Bitmask adjacency, only available for n <= 64.
  std::uint64_t adjacency_mask(int v) const { return masks_.at(v); }

 private:
  int n_ = 0;
  int r_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::uint64_t> masks_;
};

struct Cut {
  VertexSet S;
  Rational expansion;
  int cut_edges = 0;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  std::optional<Eigen::MatrixXd> eigenvectors;
};

/// Normalizes ids into a sorted unique set; throws on out-of-range ids.
VertexSet make_vertex_set(std::vector<int> ids, int n);
VertexSet complement(const VertexSet& S, int n);

int cut_edges(const Graph& G, const VertexSet& S);

/// |E(S, S^c)| / (r |S|). Requires S nonempty and S != V.
Rational expansion(const Graph& G, const VertexSet& S);

/// Builds a reported Cut (smaller side first, exact expansion).
Cut make_cut(const Graph& G, const VertexSet& S);

inline constexpr int kSpectrumCap = 512;

/// All eigenvalues of I - A/r, ascending.
Spectrum laplacian_spectrum(const Graph& G, bool with_vectors = false,
                            int max_n = kSpectrumCap);

/// Sum over edges of (f(u)-f(v))^2 divided by r * sum f(v)^2.
double rayleigh(const Graph& G, const Eigen::VectorXd& f);

struct FactLambdaReport {
  int k = 0;
  double lambda_k = 0;
  double bound = 0;  // 2 * max_i R(f_i)
  std::vector<double> quotients;
  bool holds = false;
};

/// Checks lambda_k <= 2 max R(f_i) for k disjointly supported functions.
FactLambdaReport check_fact_lambda(const Graph& G,
                                   const std::vector<Eigen::VectorXd>& fs,
                                   double tol = 1e-9);

double to_double(const Rational& q);

}  // namespace sparsecut
