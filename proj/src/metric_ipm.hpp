#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sparsecut/graph.hpp"
#include "sparsecut/sdp.hpp"

namespace sparsecut::sdp::detail {

/// A semimetric variable block on a quotient of V: vertices sharing a label
/// are at distance zero in this block.
struct QuotientBlock {
  std::vector<int> label;
  int points = 0;
};

struct ProgramOutput {
  std::vector<Eigen::MatrixXd> block_distances;  // expanded to n x n
  Eigen::MatrixXd total;                         // sum over blocks
  SolveInfo info;
};

/// Primal-dual interior point method for
///   min (1/2rn) sum_E d(u,v)
///   s.t. d = sum_b d^b, each d^b a semimetric on its quotient,
///        sum_{u<v} d(u,v) = n^2, d of negative type (Schoenberg matrix PSD).
/// Primal iterates stay strictly feasible; the result is rescaled so the
/// normalization holds to rounding.
ProgramOutput solve_metric_program(const Graph& G, const std::vector<QuotientBlock>& blocks,
                                   const SolverOptions& opts);

}  // namespace sparsecut::sdp::detail
