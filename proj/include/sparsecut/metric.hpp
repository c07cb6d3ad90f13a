#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"

namespace sparsecut::metric {

/// (1 / 2rn) * sum over edges of d(u, v).
double energy(const Graph& G, const DistanceMatrix& d);

double diameter(const VertexSet& S, const DistanceMatrix& d);
VertexSet ball(int u, double radius, const DistanceMatrix& d);
double dist_to_set(int u, const VertexSet& U, const DistanceMatrix& d);

struct TriangleReport {
  double max_violation = 0;  // max over triples of d(u,v) - d(u,w) - d(w,v)
  bool symmetric = true;
};

/// Exhaustive O(n^3) scan.
TriangleReport triangle_scan(const DistanceMatrix& d);

struct DistortionReport {
  std::int64_t violating_pairs = 0;
  double max_ratio = 0;  // max d'/d over pairs with d > 0; +inf if d = 0 < d'
  double factor = 0;
  double threshold = 0;  // the pair budget being tested
  bool within_threshold = true;
};

/// Counts unordered pairs with d'(u,v) > factor * d(u,v), skipping pairs
/// with d'(u,v) <= floor.
DistortionReport distorted_pairs(const DistanceMatrix& d, const DistanceMatrix& d_prime,
                                 double factor,
                                 double threshold = std::numeric_limits<double>::infinity(),
                                 double floor = 0);

struct DimReduceOptions {
  std::optional<int> dimension;  // overrides ceil(48 ln(8/eps))
  int retry_cap = 64;
};

struct DimReduceResult {
  EmbeddingSolution reduced;
  DistortionReport distortion;  // pairs with |x_u-x_v|^2 > 2 |z_u-z_v|^2
  int h = 0;
  int attempts = 0;
  double energy_ratio_linear = 0;   // E(d_z) / E(d_x)
  double energy_ratio_squared = 0;  // E(d_z^2) / E(d_x^2)
};

int reduced_dimension(double eps);

/// One draw of the Gaussian map x -> h^{-1/2} (<g_1,x>, ..., <g_h,x>).
Eigen::MatrixXd gaussian_projection(const Eigen::MatrixXd& vectors, int h, std::uint64_t seed);

/// Projects to h dimensions, retrying until both energy bounds
/// (factor 4) and the distorted-pair budget eps * n^2 hold. Pairs with
/// |x_u-x_v|^2 <= 1e-12 max |x|^2 distances never count as distorted.
/// Throws RandomnessFailure once the retry cap is exhausted.
DimReduceResult gaussian_dim_reduce(const Graph& G, const EmbeddingSolution& sol, double eps,
                                    std::uint64_t seed, const DimReduceOptions& opts = {});

struct EmbedResult {
  EmbeddingSolution embedded;
  double distortion = 1;  // max over pairs of d_y / d_x^2 after scaling
  int coordinates = 0;
};

/// Frechet embedding of the d_x^2 metric into l2: singleton coordinates
/// plus random subsets of sizes 2^j, rescaled so that d_y >= d_x^2 with
/// equality on the tightest pair. Pairs with d_x^2 <= triangle_tol do not
/// enter the scale or the distortion.
EmbedResult embed_l22_to_l2(const EmbeddingSolution& sol, std::uint64_t seed,
                            int repetitions = 0, double triangle_tol = 1e-6);

void write_binary(std::ostream& out, const DistanceMatrix& d);
DistanceMatrix read_binary(std::istream& in);

}  // namespace sparsecut::metric
