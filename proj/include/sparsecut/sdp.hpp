#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"

namespace sparsecut::sdp {

struct SolverOptions {
  double tol = 1e-6;        // feasibility residual tolerance
  double gap = 1e-8;        // target complementarity (duality gap) on the objective
  double max_gap = 1e-5;    // accepted gap when progress stalls before `gap`
  int max_iterations = 200; // interior-point iteration cap
  int max_n = 40;           // ARV vertex cap
  int max_variables = 3000; // cap on distance variables for the SA lift
};

struct SolveInfo {
  int iterations = 0;        // Schur systems factored
  int accepted_steps = 0;
  double gap_bound = 0;      // complementarity plus dual-residual term at termination
  int variables = 0;
  std::int64_t inequalities = 0;
};

/// Minimizes (1/2rn) sum_E |x_u-x_v|^2 subject to sum_{u<v} |x_u-x_v|^2 = n^2
/// and the triangle inequality on squared distances. Vectors come from an
/// eigendecomposition of the Gram matrix, eigenvalues below 1e-9 dropped.
EmbeddingSolution solve_arv(const Graph& G, const SolverOptions& opts = {},
                            SolveInfo* info = nullptr);

/// The cut embedding with x_v = sqrt(n^2 / (s (n - s))) on S and 0 elsewhere.
EmbeddingSolution embed_integral_cut(const Graph& G, const VertexSet& S);

/// (1/2rn) sum_E |x_u - x_v|^2.
double arv_objective(const Graph& G, const EmbeddingSolution& sol);

struct FeasibilityReport {
  double max_triangle_violation = 0;
  double normalization_residual = 0;  // |sum_{u<v} d^2 - n^2| / n^2
  double objective = 0;
  bool pass = false;
};

FeasibilityReport check_feasibility(const EmbeddingSolution& sol, double tol = 1e-6);

/// Single-set Sherali-Adams data. Pattern b is a bitmask over R (bit i <->
/// R[i]); p and d are indexed by b and have 2^|R| entries (zero where unused).
struct SASolution {
  std::vector<int> R;
  std::vector<double> p;
  std::vector<DistanceMatrix> d;

  int n() const { return d.empty() ? 0 : d.front().n(); }
  std::size_t patterns() const { return p.size(); }
};

struct SAFeasibilityReport {
  double probability_residual = 0;      // |sum_b p - 1|
  double min_probability = 0;
  double mass_residual = 0;             // max_b |sum_{u<v} d^b - n^2 p^b| / n^2
  double max_triangle_violation = 0;    // over all d^b
  double max_same_side_distance = 0;    // d^b(u,v) with u,v in R, b(u) = b(v)
  double decomposition_residual = 0;    // max_{u,v} |sum_b d^b - |x_u-x_v|^2|
  bool pass = false;
};

SAFeasibilityReport check_sa_feasibility(const EmbeddingSolution& sol, const SASolution& sa,
                                         double tol = 1e-6);

struct SAResult {
  EmbeddingSolution solution;
  SASolution sa;
};

/// Jointly optimal (x, {p^b, d^b}) for the lift restricted to R = C.
/// Requires |C| <= 10.
SAResult solve_sa_for_set(const Graph& G, const std::vector<int>& C,
                          const SolverOptions& opts = {}, SolveInfo* info = nullptr);

/// The integral witness: p^{b_R} = 1 for b_R the indicator of S on R.
SASolution integral_sa(const EmbeddingSolution& integral, const VertexSet& S,
                       const std::vector<int>& R);

/// Draws b with probability p^b and returns d^b / p^b.
DistanceMatrix sample_cut_metric(const SASolution& sa, std::uint64_t seed);

}  // namespace sparsecut::sdp
