#include "sparsecut/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sparsecut/errors.hpp"
#include "sparsecut/metric.hpp"
#include "sparsecut/random.hpp"

namespace sparsecut::rounding {

namespace {

bool better_cut(const Cut& a, const Cut& b) {
  if (a.expansion != b.expansion) return a.expansion < b.expansion;
  if (a.S.size() != b.S.size()) return a.S.size() < b.S.size();
  return a.S < b.S;
}

void keep_best(std::optional<Cut>& best, const Cut& c) {
  if (!best || better_cut(c, *best)) best = c;
}

std::vector<double> frechet_values(const DistanceMatrix& d, const VertexSet& U) {
  if (U.empty()) throw std::invalid_argument("frechet: U must be nonempty");
  std::vector<double> f(d.n());
  for (int v = 0; v < d.n(); ++v) f[v] = metric::dist_to_set(v, U, d);
  return f;
}

Trace cut_json(const Cut& c) {
  return Trace{{"size", c.S.size()}, {"expansion", to_double(c.expansion)}, {"cut_edges", c.cut_edges}};
}

std::optional<VertexSet> first_wellspread(const DistanceMatrix& d, const ExtractOptions& opts) {
  for (int c = 0; c < d.n(); ++c) {
    auto W = metric::ball(c, opts.outer_radius, d);
    if (is_well_spread(W, d, opts.alpha, opts.beta)) return W;
  }
  return std::nullopt;
}

void check_cover_diameters(const Cover& cover, const DistanceMatrix& d, double cap, const char* who) {
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    if (cover.sets[i].empty()) continue;
    const double diam = metric::diameter(cover.sets[i], d);
    if (diam > cap + 1e-9)
      throw std::invalid_argument(std::string(who) + ": cover set " + std::to_string(i) + " has diameter " +
                                  std::to_string(diam) + " above cap " + std::to_string(cap));
  }
}

// owner[v] = index of the first cover set containing v, or -1.
std::vector<int> cover_owner(const Cover& cover, int n) {
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < cover.sets.size(); ++i)
    for (int v : cover.sets[i])
      if (owner.at(v) < 0) owner[v] = static_cast<int>(i);
  return owner;
}

}  // namespace

double frechet_ratio(const Graph& G, const DistanceMatrix& d, const VertexSet& U) {
  const auto f = frechet_values(d, U);
  double num = 0, den = 0;
  for (const auto& e : G.edges()) num += std::abs(f[e.u] - f[e.v]);
  for (int u = 0; u < G.n(); ++u)
    for (int v = u + 1; v < G.n(); ++v) den += std::abs(f[u] - f[v]);
  den *= static_cast<double>(G.degree()) / G.n();
  if (den <= 0) throw DegenerateInput("frechet_ratio: f is constant");
  return num / den;
}

Cut frechet_round(const Graph& G, const DistanceMatrix& d, const VertexSet& U) {
  const int n = G.n();
  if (d.n() != n) throw std::invalid_argument("frechet_round: size mismatch");
  const auto f = frechet_values(d, U);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
  if (f[order.front()] == f[order.back()]) throw DegenerateInput("frechet_round: all values of d(., U) coincide");

  std::vector<char> in(n, 0);
  int crossing = 0;
  std::optional<Cut> best;
  for (int i = 1; i < n; ++i) {
    const int v = order[i - 1];
    in[v] = 1;
    for (int w : G.neighbors(v)) crossing += in[w] ? -1 : 1;
    if (!(f[order[i - 1]] < f[order[i]])) continue;
    VertexSet P(order.begin(), order.begin() + i);
    std::sort(P.begin(), P.end());
    VertexSet Q = complement(P, n);
    VertexSet S;
    if (P.size() != Q.size()) S = P.size() < Q.size() ? std::move(P) : std::move(Q);
    else S = std::min(P, Q);
    Cut c{S, Rational(crossing, static_cast<std::int64_t>(G.degree()) * static_cast<std::int64_t>(S.size())), crossing};
    keep_best(best, c);
  }
  const double ratio = frechet_ratio(G, d, U);
  const double got = to_double(best->expansion);
  if (got > ratio * (1 + 1e-9) + 1e-12)
    throw std::logic_error("frechet_round: sweep cut " + std::to_string(got) + " exceeds ratio " +
                           std::to_string(ratio));
  return *best;
}

bool is_well_spread(const VertexSet& A, const DistanceMatrix& d, double alpha, double beta, double tol) {
  if (A.empty()) return false;
  double mass = 0;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = i + 1; j < A.size(); ++j) {
      const double v = d(A[i], A[j]);
      if (v > alpha + tol) return false;
      mass += v;
    }
  const double n2 = static_cast<double>(d.n()) * d.n();
  return mass >= beta * n2 - tol * n2;
}

ExtractResult wellspread_extract(const Graph& G, const EmbeddingSolution& sol, const ExtractOptions& opts) {
  const int n = G.n();
  const auto d = squared_distances(sol);
  const double sdp = sdp::arv_objective(G, sol);
  ExtractResult res;
  std::optional<VertexSet> W;
  int w_center = -1, degenerate = 0;
  for (int c = 0; c < n; ++c) {
    const auto U = metric::ball(c, opts.inner_radius, d);
    try {
      keep_best(res.best_cut, frechet_round(G, d, U));
    } catch (const DegenerateInput&) {
      ++degenerate;
    }
    if (!W) {
      auto B = metric::ball(c, opts.outer_radius, d);
      if (is_well_spread(B, d, opts.alpha, opts.beta)) {
        W = std::move(B);
        w_center = c;
      }
    }
  }
  double w_radius = opts.outer_radius;
  // wider balls, accepted only when the diameter bound holds directly
  for (int c = 0; c < n && !W && opts.alpha > opts.outer_radius; ++c) {
    auto B = metric::ball(c, opts.alpha, d);
    if (is_well_spread(B, d, opts.alpha, opts.beta)) {
      W = std::move(B);
      w_center = c;
      w_radius = opts.alpha;
    }
  }
  res.trace["sdp"] = sdp;
  res.trace["kappa"] = opts.kappa;
  res.trace["degenerate_centers"] = degenerate;
  if (res.best_cut) res.trace["best_cut"] = cut_json(*res.best_cut);
  if (res.best_cut && to_double(res.best_cut->expansion) <= opts.kappa * sdp + 1e-12) {
    res.cut = res.best_cut;
    res.trace["branch"] = "cut";
    return res;
  }
  if (W) {
    WellSpreadSet ws;
    ws.A = std::move(*W);
    ws.alpha_diam = opts.alpha;
    ws.beta_mass = opts.beta;
    res.set = std::move(ws);
    res.trace["branch"] = "well-spread";
    res.trace["center"] = w_center;
    res.trace["radius"] = w_radius;
    res.trace["set_size"] = res.set->A.size();
    return res;
  }
  throw ExtractionFailure("wellspread_extract: best sweep cut " +
                          (res.best_cut ? std::to_string(to_double(res.best_cut->expansion)) : std::string("none")) +
                          " exceeds kappa*sdp = " + std::to_string(opts.kappa * sdp) +
                           " and no ball of radius " + std::to_string(opts.outer_radius) + " or " +
                          std::to_string(opts.alpha) + " is well spread");
}

double separated_score(const VertexSet& C, const std::vector<double>& w, const DistanceMatrix& d2,
                       const VertexSet& U) {
  std::vector<double> g(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) g[i] = metric::dist_to_set(C[i], U, d2);
  double s = 0;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j) s += w[i] * w[j] * std::abs(g[i] - g[j]);
  return s;
}

SeparatedSetsResult separated_sets(const VertexSet& C, const std::vector<double>& w,
                                   const DistanceMatrix& d2, double Delta, std::uint64_t seed,
                                   int exhaustive_cap, int directions, bool force_projection) {
  const int c = static_cast<int>(C.size());
  if (w.size() != C.size()) throw std::invalid_argument("separated_sets: weight size mismatch");
  double sep = 0;
  for (int i = 0; i < c; ++i)
    for (int j = i + 1; j < c; ++j)
      if (d2(C[i], C[j]) >= Delta) sep += w[i] * w[j];
  if (!(sep > 0)) throw std::invalid_argument("separated_sets: no weighted pair at distance >= Delta");

  SeparatedSetsResult best;
  best.score = -1;
  auto consider = [&](VertexSet U) {
    ++best.candidates;
    std::sort(U.begin(), U.end());
    const double s = separated_score(C, w, d2, U);
    if (s > best.score) {
      best.score = s;
      best.U = std::move(U);
    }
  };

  if (c <= exhaustive_cap && !force_projection) {
    best.generator = "exhaustive";
    for (std::uint32_t mask = 1; mask < (1u << c); ++mask) {
      VertexSet U;
      for (int i = 0; i < c; ++i)
        if (mask >> i & 1u) U.push_back(C[i]);
      consider(std::move(U));
    }
    return best;
  }

  best.generator = "projection";
  Eigen::MatrixXd D(c, c);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) D(i, j) = d2(C[i], C[j]);
  const Eigen::MatrixXd J = Eigen::MatrixXd::Identity(c, c) - Eigen::MatrixXd::Constant(c, c, 1.0 / c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-0.5 * J * D * J);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd X = es.eigenvectors() * lam.asDiagonal();
  auto rng = make_rng(seed, 303);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int t = 0; t < directions; ++t) {
    Eigen::VectorXd g(c);
    for (int i = 0; i < c; ++i) g[i] = normal(rng);
    const Eigen::VectorXd p = X * g;
    std::vector<int> idx(c);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return p[a] > p[b]; });
    VertexSet U;
    for (int r = 0; r < c; ++r) {
      U.push_back(C[idx[r]]);
      if (r + 1 < c && p[idx[r + 1]] == p[idx[r]]) continue;
      consider(U);
    }
  }
  return best;
}

std::vector<int> medoids(const std::vector<VertexSet>& sets, const DistanceMatrix& d) {
  std::vector<int> out;
  for (const auto& S : sets) {
    if (S.empty()) continue;
    int best = -1;
    double best_sum = 0;
    for (int u : S) {
      double s = 0;
      for (int v : S) s += d(u, v);
      if (best < 0 || s < best_sum || (s == best_sum && u < best)) {
        best = u;
        best_sum = s;
      }
    }
    out.push_back(best);
  }
  return out;
}

RoundedCut round_arv(const Graph& G, const EmbeddingSolution& sol, const Cover& cover, std::uint64_t seed,
                     const ArvRoundOptions& opts) {
  const int n = G.n();
  const auto d = squared_distances(sol);
  check_cover_diameters(cover, d, opts.cover_diameter_cap, "round_arv");
  RoundedCut out;
  out.method = "arv";
  out.seed = seed;
  auto ex = wellspread_extract(G, sol, opts.extract);
  out.trace["extract"] = ex.trace;
  std::optional<Cut> best = ex.best_cut;
  if (ex.cut) {
    out.cut = *ex.cut;
    out.trace["branch"] = "cut";
    return out;
  }

  const auto owner = cover_owner(cover, n);
  const VertexSet& W = ex.set->A;
  std::vector<VertexSet> parts(cover.sets.size());
  for (int v : W)
    if (owner[v] >= 0) parts[owner[v]].push_back(v);
  VertexSet A;
  for (const auto& p : parts) A.insert(A.end(), p.begin(), p.end());
  std::sort(A.begin(), A.end());
  const int dropped = static_cast<int>(W.size() - A.size());
  out.trace["well_spread_size"] = W.size();
  out.trace["dropped"] = dropped;
  out.trace["drop_budget"] = opts.drop_fraction * n;
  if (!is_well_spread(A, d, opts.extract.alpha, opts.reduced_beta))
    throw ExtractionFailure("round_arv: W intersected with the cover (" + std::to_string(A.size()) +
                            " vertices, " + std::to_string(dropped) + " dropped) is not (" +
                            std::to_string(opts.extract.alpha) + ", " + std::to_string(opts.reduced_beta) +
                            ")-well spread");

  std::vector<VertexSet> used;
  for (auto& p : parts)
    if (!p.empty()) used.push_back(std::move(p));
  const auto centers = medoids(used, d);
  std::vector<double> w;
  for (const auto& p : used) w.push_back(static_cast<double>(p.size()));
  SeparatedSetsResult sep;
  try {
    sep = separated_sets(centers, w, d, opts.half_Delta, mix_seed(seed, 11));
  } catch (const std::invalid_argument& e) {
    throw ExtractionFailure(std::string("round_arv: ") + e.what());
  }
  out.trace["centers"] = centers;
  out.trace["weights"] = w;
  out.trace["separated"] = {{"generator", sep.generator}, {"score", sep.score},
                            {"candidates", sep.candidates}, {"U", sep.U}};
  const Cut c = frechet_round(G, d, sep.U);
  out.trace["separated_cut"] = cut_json(c);
  keep_best(best, c);
  out.cut = *best;
  out.trace["branch"] = "well-spread";
  return out;
}

RoundedCut round_sa(const Graph& G, const EmbeddingSolution& sol, const sdp::SASolution& sa, const Cover& cover,
                    std::uint64_t seed, const SaRoundOptions& opts) {
  const int n = G.n();
  if (sa.n() != n || sol.n() != n) throw std::invalid_argument("round_sa: size mismatch");
  const auto d = squared_distances(sol);
  check_cover_diameters(cover, d, opts.cover_diameter_cap, "round_sa");
  if (sa.R.empty()) throw std::invalid_argument("round_sa: SA solution has no centers");

  std::vector<int> set_center(cover.sets.size(), -1);
  std::vector<char> placed(sa.R.size(), 0);
  for (std::size_t i = 0; i < cover.sets.size(); ++i) {
    for (std::size_t j = 0; j < sa.R.size(); ++j)
      if (std::binary_search(cover.sets[i].begin(), cover.sets[i].end(), sa.R[j])) {
        if (set_center[i] >= 0)
          throw std::invalid_argument("round_sa: cover set " + std::to_string(i) + " holds two centers");
        set_center[i] = sa.R[j];
        placed[j] = 1;
      }
    if (!cover.sets[i].empty() && set_center[i] < 0)
      throw std::invalid_argument("round_sa: cover set " + std::to_string(i) + " holds no center");
  }
  if (std::find(placed.begin(), placed.end(), 0) != placed.end())
    throw std::invalid_argument("round_sa: a center lies outside every cover set");

  const auto owner = cover_owner(cover, n);
  const auto W = first_wellspread(d, opts.extract);
  VertexSet A;
  std::vector<int> home(n, -1);
  for (int v = 0; v < n; ++v) {
    if (owner[v] < 0) continue;
    if (W && !std::binary_search(W->begin(), W->end(), v)) continue;
    A.push_back(v);
    home[v] = set_center[owner[v]];
  }
  if (A.empty()) throw std::invalid_argument("round_sa: empty working set");

  double center_mean = 0;
  for (int v : A) center_mean += d(v, home[v]);
  center_mean /= static_cast<double>(A.size());
  const double center_bound = opts.center_bound ? *opts.center_bound : 4.0 * center_mean;
  double edge_x = 0;
  for (const auto& e : G.edges()) edge_x += d(e.u, e.v);
  const double n2 = static_cast<double>(n) * n;
  const double slack = opts.tol * n2;

  RoundedCut out;
  out.method = "sa";
  out.seed = seed;
  out.trace["working_set"] = A.size();
  out.trace["working_set_source"] = W ? "well-spread" : "cover";
  out.trace["center_bound"] = center_bound;
  int fail_edge = 0, fail_mass = 0, fail_center = 0, degenerate = 0, successes = 0, attempts = 0;
  std::optional<Cut> best;
  const int a1 = sa.R.front();
  for (int attempt = 0; attempt < opts.retry_cap && successes < opts.samples; ++attempt) {
    ++attempts;
    const auto D = sdp::sample_cut_metric(sa, mix_seed(seed, attempt));
    double edge = 0, mass = 0, cdist = 0;
    for (const auto& e : G.edges()) edge += D(e.u, e.v);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = i + 1; j < A.size(); ++j) mass += D(A[i], A[j]);
    for (int v : A) cdist += D(v, home[v]);
    bool ok = true;
    if (edge > opts.edge_factor * edge_x + slack) { ++fail_edge; ok = false; }
    if (mass < opts.mass_fraction * n2 - slack) { ++fail_mass; ok = false; }
    if (cdist > center_bound * static_cast<double>(A.size()) + slack) { ++fail_center; ok = false; }
    if (!ok) continue;
    try {
      keep_best(best, frechet_round(G, D, {a1}));
      ++successes;
    } catch (const DegenerateInput&) {
      ++degenerate;
    }
  }
  out.trace["attempts"] = attempts;
  out.trace["successes"] = successes;
  out.trace["failures"] = {{"edge", fail_edge}, {"mass", fail_mass}, {"center", fail_center}, {"degenerate", degenerate}};
  if (!best)
    throw SamplingFailure("round_sa: no sample met all conditions in " + std::to_string(attempts) +
                          " attempts (edge " + std::to_string(fail_edge) + ", mass " + std::to_string(fail_mass) +
                          ", center " + std::to_string(fail_center) + ", degenerate " + std::to_string(degenerate) + ")");
  out.cut = *best;
  return out;
}

}  // namespace sparsecut::rounding
