#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "sparsecut/cover.hpp"
#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"
#include "sparsecut/partition.hpp"

namespace sparsecut::structure {

using Trace = nlohmann::ordered_json;

/// Exactly one of cover / certificate is set.
struct StructureOutcome {
  std::optional<Cover> cover;
  std::optional<Certificate> certificate;
  Trace trace = Trace::object();

  bool is_cover() const { return cover.has_value(); }
};

struct StructureOptions {
  std::optional<int> dimension;  // overrides the reduced dimension h
  int dim_retry_cap = 64;
  int partition_retry_cap = 32;  // resamples when a partition cannot seed 2k nonempty interiors
  partition::PaddedScheme padded = partition::PaddedScheme::grid;
  partition::LipschitzScheme lipschitz = partition::LipschitzScheme::ball_carving;
  double feasibility_tol = 1e-6;
};

/// Low-diameter cover of d_x^2 or a spectral certificate of k functions.
StructureOutcome cover_via_lambda(const Graph& G, const EmbeddingSolution& sol, int k, double eps,
                                  double delta, std::uint64_t seed, const StructureOptions& opts = {});

/// Low-diameter cover of d_x^2 or an expansion certificate of k disjoint sets.
StructureOutcome cover_via_phi(const Graph& G, const EmbeddingSolution& sol, int k, double eps,
                               double delta, std::uint64_t seed, const StructureOptions& opts = {});

/// Runs a pipeline for `trials` derived seeds; prefers a cover with the
/// highest coverage, then the lowest trial index.
StructureOutcome best_of(const std::function<StructureOutcome(std::uint64_t)>& run, int trials,
                         std::uint64_t seed);

struct BoundCheck {
  bool certificate = false;  // false when the outcome is a cover
  std::string variant;
  int k = 0;
  double max_value = 0;      // max R(f_i) or max phi(T_i)
  double lambda_k = 0;
  std::optional<double> phi_k;
  bool holds = false;
};

BoundCheck certificate_bound_check(const Graph& G, const StructureOutcome& outcome, int k,
                                   double tol = 1e-9);

/// verify_cover at (delta, eps) under d_x^2 for covers, certificate_bound_check otherwise.
bool verify_outcome(const Graph& G, const EmbeddingSolution& sol, const StructureOutcome& outcome,
                    int k, double eps, double delta, double tol = 1e-9);

}  // namespace sparsecut::structure
