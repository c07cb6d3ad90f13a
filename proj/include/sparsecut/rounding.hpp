#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsecut/cover.hpp"
#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"
#include "sparsecut/sdp.hpp"

namespace sparsecut::rounding {

using Trace = nlohmann::ordered_json;

struct RoundedCut {
  Cut cut;
  std::string method;
  std::uint64_t seed = 0;
  Trace trace = Trace::object();
};

/// Sweep over thresholds of f(v) = d(v, U). Among equal expansions the
/// smaller |S| wins, then the lexicographically smaller S. Throws
/// DegenerateInput when f is constant.
Cut frechet_round(const Graph& G, const DistanceMatrix& d, const VertexSet& U);

/// sum_E |f(u)-f(v)| / ((r/n) sum_{u<v} |f(u)-f(v)|) for f = d(., U).
double frechet_ratio(const Graph& G, const DistanceMatrix& d, const VertexSet& U);

struct WellSpreadSet {
  VertexSet A;
  double alpha_diam = 4;
  double beta_mass = 1.0 / 16;
  std::vector<VertexSet> sub_cover;
  std::vector<int> centers;
};

/// diam(A, d) <= alpha and sum_{u<v in A} d(u,v) >= beta n^2 (within tol).
bool is_well_spread(const VertexSet& A, const DistanceMatrix& d, double alpha, double beta,
                    double tol = 1e-9);

struct ExtractOptions {
  double kappa = 16;
  double inner_radius = 0.25;
  double outer_radius = 2;
  double alpha = 4;
  double beta = 1.0 / 16;
};

/// Exactly one of `cut` / `set` is the returned branch; `best_cut` is the
/// best sweep cut seen in either case.
struct ExtractResult {
  std::optional<Cut> cut;
  std::optional<WellSpreadSet> set;
  std::optional<Cut> best_cut;
  Trace trace = Trace::object();
};

/// Sweeps U = B(c, inner_radius) for every c; the cut wins when its
/// expansion is <= kappa * sdp. Otherwise the first ball B(c, outer_radius),
/// then B(c, alpha), that passes is_well_spread. ExtractionFailure if none.
ExtractResult wellspread_extract(const Graph& G, const EmbeddingSolution& sol,
                                 const ExtractOptions& opts = {});

struct SeparatedSetsResult {
  VertexSet U;
  double score = 0;
  std::string generator;  // "exhaustive" or "projection"
  int candidates = 0;
};

/// score(U) = sum_{u<v in C} w(u) w(v) |d2(u,U) - d2(v,U)| over nonempty
/// U within C. Exhaustive for |C| <= exhaustive_cap, else Gaussian
/// projection thresholds over `directions` seeds using coordinates from
/// classical scaling of d2 on C.
SeparatedSetsResult separated_sets(const VertexSet& C, const std::vector<double>& w,
                                   const DistanceMatrix& d2, double Delta, std::uint64_t seed,
                                   int exhaustive_cap = 15, int directions = 64,
                                   bool force_projection = false);

double separated_score(const VertexSet& C, const std::vector<double>& w, const DistanceMatrix& d2,
                       const VertexSet& U);

struct ArvRoundOptions {
  double cover_diameter_cap = 1.0 / 256;
  double half_Delta = 1.0 / 128;
  double drop_fraction = 1.0 / 128;
  double reduced_beta = 1.0 / 32;
  ExtractOptions extract;
};

RoundedCut round_arv(const Graph& G, const EmbeddingSolution& sol, const Cover& cover,
                     std::uint64_t seed, const ArvRoundOptions& opts = {});

struct SaRoundOptions {
  int retry_cap = 200;
  int samples = 16;                      // successful samples to collect
  double edge_factor = 4;                // sum_E D <= factor sum_E d_x^2
  double mass_fraction = 1.0 / 64;       // sum_{u<v in A} D >= fraction n^2
  std::optional<double> center_bound;    // c4' ; default 4 * mean d_x^2(u, c(u)) over A
  double cover_diameter_cap = 1.0 / 16;  // c4 threshold on d_x^2 diameters
  double tol = 1e-6;                     // slack on each condition, in units of n^2
  ExtractOptions extract;
};

/// Centers are sa.R; each nonempty cover set must contain exactly one.
RoundedCut round_sa(const Graph& G, const EmbeddingSolution& sol, const sdp::SASolution& sa,
                    const Cover& cover, std::uint64_t seed, const SaRoundOptions& opts = {});

/// Medoid (minimum total d to the others, lowest index on ties) of each nonempty set.
std::vector<int> medoids(const std::vector<VertexSet>& sets, const DistanceMatrix& d);

}  // namespace sparsecut::rounding
