#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sparsecut/cover.hpp"
#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"

namespace sparsecut::partition {

enum class PaddedScheme { grid, ckr };
enum class LipschitzScheme { ball_carving, ckr };

std::string to_string(PaddedScheme s);
std::string to_string(LipschitzScheme s);
PaddedScheme padded_scheme_from_string(const std::string& s);
LipschitzScheme lipschitz_scheme_from_string(const std::string& s);

/// Random partition of the rows of `points` into blocks of Euclidean
/// diameter <= delta. `parameter` holds alpha such that a ball of radius
/// delta/alpha around a point is cut with probability at most eps.
///   grid: shifted axis-aligned grid of side delta/sqrt(h); alpha = 2 h^1.5 / eps
///   ckr:  data-point centers, radius U[delta/4, delta/2]; alpha = 8 H_n / eps
Partition padded_partition(const EmbeddingSolution& points, double delta, double eps,
                           std::uint64_t seed, PaddedScheme scheme = PaddedScheme::grid);

/// Random partition with blocks of Euclidean diameter <= delta that
/// separates u, v with probability at most parameter * |u - v| / delta.
///   ball_carving: centers uniform on the union of delta/2 balls; L = 4 V_{h-1} / V_h
///   ckr:          data-point centers, radius U[delta/4, delta/2]; L = 8 H_n
Partition lipschitz_partition(const EmbeddingSolution& points, double delta, std::uint64_t seed,
                              LipschitzScheme scheme = LipschitzScheme::ball_carving);

/// 4 V_{h-1} / V_h, with V_j the volume of the unit ball in R^j.
double ball_carving_constant(int h);

/// Fraction of `trials` partitions that separate rows u and v.
double separation_frequency(const EmbeddingSolution& points, int u, int v, double delta,
                            int trials, std::uint64_t seed,
                            LipschitzScheme scheme = LipschitzScheme::ball_carving);

/// Largest observed separation frequency divided by d(u,v)/delta over the
/// given pairs: an empirical Lipschitz constant.
double estimate_lipschitz(const EmbeddingSolution& points, const std::vector<std::pair<int, int>>& pairs,
                          double delta, int trials, std::uint64_t seed,
                          LipschitzScheme scheme = LipschitzScheme::ball_carving);

/// Every block has diameter <= delta (+tol) under d and the blocks partition V.
bool is_delta_bounded(const Partition& P, const DistanceMatrix& d, double tol = 1e-9);

/// {v in block : ball(v, rho, d) is contained in block}.
VertexSet interior(const VertexSet& block, double rho, const DistanceMatrix& d);

using WeightFn = std::function<long long(const VertexSet&)>;

/// Seeds the 2k heaviest sets (stable by input position), then merges each
/// remaining set into the currently lightest output (ties: lowest index).
/// Pads with empty sets when fewer than `target` sets are given.
std::vector<VertexSet> merge_small(const std::vector<VertexSet>& sets, int target,
                                   const WeightFn& weight);

/// f_i(v) = max(0, 1 - alpha d(v, interior_i) / delta).
std::vector<Eigen::VectorXd> bump_functions(const std::vector<VertexSet>& T,
                                            const std::vector<VertexSet>& interiors, double alpha,
                                            double delta, const DistanceMatrix& d);

/// For each input set, the ball B_{d'}(u, 2 delta) intersected with the set
/// over the best member u satisfying |ball ∩ S| >= (1 - eps/2)|S|; sets
/// without such a member contribute an empty set.
Cover cover_transfer(const std::vector<VertexSet>& sets, const DistanceMatrix& d,
                     const DistanceMatrix& d_prime, double delta, double eps,
                     const std::string& metric_name = "target");

}  // namespace sparsecut::partition
