#include "sparsecut/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sparsecut/errors.hpp"
#include "sparsecut/metric.hpp"
#include "sparsecut/oracle.hpp"
#include "sparsecut/random.hpp"

namespace sparsecut::structure {

namespace {

void validate(const Graph& G, const EmbeddingSolution& sol, int k, double eps, double delta,
              double tol) {
  if (sol.n() != G.n()) throw std::invalid_argument("structure: solution size does not match graph");
  if (k < 1) throw std::invalid_argument("structure: k must be positive");
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("structure: eps must lie in (0,1)");
  if (!(delta > 0 && delta < 1)) throw std::invalid_argument("structure: delta must lie in (0,1)");
  const double viol = metric::triangle_scan(squared_distances(sol)).max_violation;
  if (viol > tol)
    throw std::invalid_argument("structure: squared distances violate the triangle inequality by " +
                                std::to_string(viol));
}

double distortion_budget(double eps, int k) { return eps * eps * eps / (512.0 * k * k); }

// Indices sorted by descending key, stable in block order.
std::vector<std::size_t> order_by(const std::vector<std::size_t>& key) {
  std::vector<std::size_t> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return idx;
}

Rational set_phi(const Graph& G, const VertexSet& T) {
  return Rational(cut_edges(G, T), static_cast<std::int64_t>(G.degree()) * static_cast<std::int64_t>(T.size()));
}

Trace dim_trace(const metric::DimReduceResult& dr, double budget) {
  Trace t = Trace::object();
  t["h"] = dr.h;
  t["attempts"] = dr.attempts;
  t["pair_budget_fraction"] = budget;
  t["distorted_pairs"] = dr.distortion.violating_pairs;
  t["energy_ratio_linear"] = dr.energy_ratio_linear;
  t["energy_ratio_squared"] = dr.energy_ratio_squared;
  return t;
}

void pad_cover(Cover& c, int target) {
  while (static_cast<int>(c.sets.size()) < target) {
    c.sets.emplace_back();
    c.diameters.push_back(0.0);
  }
}

}  // namespace

StructureOutcome cover_via_lambda(const Graph& G, const EmbeddingSolution& sol, int k, double eps,
                                  double delta, std::uint64_t seed, const StructureOptions& opts) {
  validate(G, sol, k, eps, delta, opts.feasibility_tol);
  const int n = G.n();
  const int target = 2 * k;
  StructureOutcome out;
  Trace& tr = out.trace;
  tr["pipeline"] = "lambda";
  tr["k"] = k;
  tr["eps"] = eps;
  tr["delta"] = delta;
  tr["seed"] = seed;

  const double budget = distortion_budget(eps, k);
  const auto dr = metric::gaussian_dim_reduce(G, sol, budget, mix_seed(seed, 1),
                                              {opts.dimension, opts.dim_retry_cap});
  tr["dimension_reduction"] = dim_trace(dr, budget);
  const auto dz = euclidean_distances(dr.reduced);
  const auto dz2 = squared_distances(dr.reduced);
  const auto dx2 = squared_distances(sol);
  const double delta_z = std::sqrt(delta / 4);
  const double eps_pad = eps / 8;
  tr["partition_delta"] = delta_z;
  tr["padding_eps"] = eps_pad;

  Trace attempts = Trace::array();
  for (int attempt = 0; attempt < opts.partition_retry_cap; ++attempt) {
    const auto P = partition::padded_partition(dr.reduced, delta_z, eps_pad, mix_seed(seed, 100 + attempt), opts.padded);
    if (!partition::is_delta_bounded(P, dz, 1e-9))
      throw std::logic_error("padded partition violated its diameter bound");
    const double alpha = P.parameter;
    const double rho = delta_z / alpha;
    std::vector<VertexSet> interiors;
    std::vector<std::size_t> isize;
    for (const auto& b : P.blocks) {
      interiors.push_back(partition::interior(b, rho, dz));
      isize.push_back(interiors.back().size());
    }
    const auto order = order_by(isize);
    std::size_t top = 0;
    for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < target; ++i) top += isize[order[i]];

    Trace at = Trace::object();
    at["scheme"] = P.scheme;
    at["alpha"] = alpha;
    at["interior_radius"] = rho;
    at["blocks"] = P.blocks.size();
    Trace sizes = Trace::array();
    for (std::size_t i = 0; i < order.size() && i < 8; ++i) sizes.push_back(isize[order[i]]);
    at["largest_interiors"] = sizes;
    at["top_interior_coverage"] = top;

    if (static_cast<double>(top) >= (1 - eps / 2) * n) {
      std::vector<VertexSet> heads;
      for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < target; ++i)
        heads.push_back(interiors[order[i]]);
      Cover cover = partition::cover_transfer(heads, dz2, dx2, delta / 4, eps / 2, "squared");
      pad_cover(cover, target);
      at["transfer_coverage"] = cover.covered_count;
      if (oracle::verify_cover(cover, dx2, delta, eps)) {
        at["branch"] = "cover";
        attempts.push_back(at);
        tr["partition_attempts"] = attempts;
        tr["branch"] = "cover";
        out.cover = std::move(cover);
        return out;
      }
      at["transfer_verified"] = false;
    }

    const auto weight = [&](const VertexSet& T) {
      return static_cast<long long>(partition::interior(T, rho, dz).size());
    };
    const auto merged = partition::merge_small(P.blocks, target, weight);
    std::vector<std::size_t> usable;
    std::vector<VertexSet> mi;
    for (std::size_t i = 0; i < merged.size(); ++i) {
      mi.push_back(partition::interior(merged[i], rho, dz));
      if (!mi.back().empty()) usable.push_back(i);
    }
    Trace mw = Trace::array();
    for (const auto& I : mi) mw.push_back(I.size());
    at["merged_interiors"] = mw;
    if (static_cast<int>(usable.size()) < k) {
      at["branch"] = "resample";
      attempts.push_back(at);
      continue;
    }
    std::vector<VertexSet> T, I;
    for (std::size_t i : usable) {
      T.push_back(merged[i]);
      I.push_back(mi[i]);
    }
    auto fs = partition::bump_functions(T, I, alpha, delta_z, dz);
    std::vector<double> numer(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      double s = 0;
      for (const auto& e : G.edges()) s += (fs[i][e.u] - fs[i][e.v]) * (fs[i][e.u] - fs[i][e.v]);
      numer[i] = s;
    }
    std::vector<std::size_t> pick(fs.size());
    std::iota(pick.begin(), pick.end(), 0);
    std::stable_sort(pick.begin(), pick.end(), [&](std::size_t a, std::size_t b) { return numer[a] < numer[b]; });
    pick.resize(k);
    std::sort(pick.begin(), pick.end());

    Certificate cert;
    cert.variant = Certificate::Variant::spectral;
    Trace nums = Trace::array();
    for (std::size_t i : pick) {
      cert.functions.push_back(fs[i]);
      cert.rayleigh_quotients.push_back(rayleigh(G, fs[i]));
      cert.sets.push_back(T[i]);
      nums.push_back(numer[i]);
    }
    at["branch"] = "certificate";
    at["numerators"] = nums;
    attempts.push_back(at);
    tr["partition_attempts"] = attempts;
    tr["branch"] = "certificate";
    out.certificate = std::move(cert);
    return out;
  }
  throw RandomnessFailure("cover_via_lambda: no usable partition after " +
                          std::to_string(opts.partition_retry_cap) + " attempts");
}

StructureOutcome cover_via_phi(const Graph& G, const EmbeddingSolution& sol, int k, double eps,
                               double delta, std::uint64_t seed, const StructureOptions& opts) {
  validate(G, sol, k, eps, delta, opts.feasibility_tol);
  const int n = G.n();
  const int target = 2 * k;
  StructureOutcome out;
  Trace& tr = out.trace;
  tr["pipeline"] = "phi";
  tr["k"] = k;
  tr["eps"] = eps;
  tr["delta"] = delta;
  tr["seed"] = seed;

  const auto emb = metric::embed_l22_to_l2(sol, mix_seed(seed, 2));
  tr["embedding"] = {{"distortion", emb.distortion}, {"coordinates", emb.coordinates}};
  const double budget = distortion_budget(eps, k);
  const auto dr = metric::gaussian_dim_reduce(G, emb.embedded, budget, mix_seed(seed, 1),
                                              {opts.dimension, opts.dim_retry_cap});
  tr["dimension_reduction"] = dim_trace(dr, budget);
  const auto dz = euclidean_distances(dr.reduced);
  const auto dy = euclidean_distances(emb.embedded);
  const auto dx2 = squared_distances(sol);
  const double delta_z = delta / 4;
  tr["partition_delta"] = delta_z;
  const double energy_z = metric::energy(G, dz);

  Trace attempts = Trace::array();
  for (int attempt = 0; attempt < opts.partition_retry_cap; ++attempt) {
    const auto P = partition::lipschitz_partition(dr.reduced, delta_z, mix_seed(seed, 100 + attempt), opts.lipschitz);
    if (!partition::is_delta_bounded(P, dz, 1e-9))
      throw std::logic_error("lipschitz partition violated its diameter bound");
    std::vector<std::size_t> size;
    for (const auto& b : P.blocks) size.push_back(b.size());
    const auto order = order_by(size);
    std::size_t top = 0;
    for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < target; ++i) top += size[order[i]];

    Trace at = Trace::object();
    at["scheme"] = P.scheme;
    at["lipschitz_constant"] = P.parameter;
    at["blocks"] = P.blocks.size();
    Trace sizes = Trace::array();
    for (std::size_t i = 0; i < order.size() && i < 8; ++i) sizes.push_back(size[order[i]]);
    at["largest_blocks"] = sizes;
    at["top_block_coverage"] = top;
    // expansion bound the certificate must meet when the hypothesis holds
    at["expansion_reference"] = 16.0 * emb.distortion * P.parameter / (eps * delta) * energy_z;

    if (static_cast<double>(top) >= (1 - eps / 2) * n) {
      std::vector<VertexSet> heads;
      for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < target; ++i)
        heads.push_back(P.blocks[order[i]]);
      Cover cover = partition::cover_transfer(heads, dz, dy, delta_z, eps / 2, "squared");
      Trace ydiam = Trace::array();
      for (std::size_t i = 0; i < cover.sets.size(); ++i) {
        ydiam.push_back(cover.diameters[i]);
        cover.diameters[i] = cover.sets[i].empty() ? 0.0 : metric::diameter(cover.sets[i], dx2);
      }
      pad_cover(cover, target);
      at["transfer_coverage"] = cover.covered_count;
      at["embedded_diameters"] = ydiam;
      if (oracle::verify_cover(cover, dx2, delta, eps)) {
        at["branch"] = "cover";
        attempts.push_back(at);
        tr["partition_attempts"] = attempts;
        tr["branch"] = "cover";
        out.cover = std::move(cover);
        return out;
      }
      at["transfer_verified"] = false;
    }

    const auto weight = [](const VertexSet& T) { return static_cast<long long>(T.size()); };
    const auto merged = partition::merge_small(P.blocks, target, weight);
    std::vector<std::size_t> usable;
    std::vector<Rational> phis(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i)
      if (!merged[i].empty()) {
        usable.push_back(i);
        phis[i] = set_phi(G, merged[i]);
      }
    if (static_cast<int>(usable.size()) < k) {
      at["branch"] = "resample";
      attempts.push_back(at);
      continue;
    }
    std::stable_sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) { return phis[a] < phis[b]; });
    usable.resize(k);
    std::sort(usable.begin(), usable.end());
    Certificate cert;
    cert.variant = Certificate::Variant::expansion;
    Trace ph = Trace::array();
    for (std::size_t i : usable) {
      cert.sets.push_back(merged[i]);
      cert.expansions.push_back(phis[i]);
      ph.push_back(to_double(phis[i]));
    }
    at["branch"] = "certificate";
    at["expansions"] = ph;
    attempts.push_back(at);
    tr["partition_attempts"] = attempts;
    tr["branch"] = "certificate";
    out.certificate = std::move(cert);
    return out;
  }
  throw RandomnessFailure("cover_via_phi: no usable partition after " +
                          std::to_string(opts.partition_retry_cap) + " attempts");
}

StructureOutcome best_of(const std::function<StructureOutcome(std::uint64_t)>& run, int trials,
                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("best_of: trials must be positive");
  std::optional<StructureOutcome> best;
  for (int t = 0; t < trials; ++t) {
    auto o = run(mix_seed(seed, 5000 + t));
    o.trace["trial"] = t;
    if (!best) {
      best = std::move(o);
      continue;
    }
    const bool better = o.is_cover() &&
                        (!best->is_cover() || o.cover->covered_count > best->cover->covered_count);
    if (better) best = std::move(o);
  }
  best->trace["trials"] = trials;
  return std::move(*best);
}

BoundCheck certificate_bound_check(const Graph& G, const StructureOutcome& outcome, int k, double tol) {
  BoundCheck bc;
  bc.k = k;
  if (!outcome.certificate) return bc;
  bc.certificate = true;
  const auto& cert = *outcome.certificate;
  const auto rep = oracle::verify_certificate(G, cert, tol);
  bc.variant = cert.variant == Certificate::Variant::spectral ? "spectral" : "expansion";
  bc.lambda_k = rep.lambda_k;
  bc.phi_k = rep.phi_k;
  bc.max_value = cert.variant == Certificate::Variant::spectral ? rep.implied_bound / 2 : rep.implied_bound;
  bc.holds = rep.bound_holds && cert.k() == k;
  return bc;
}

bool verify_outcome(const Graph& G, const EmbeddingSolution& sol, const StructureOutcome& outcome,
                    int k, double eps, double delta, double tol) {
  if (outcome.cover.has_value() == outcome.certificate.has_value()) return false;
  if (outcome.cover) {
    if (static_cast<int>(outcome.cover->sets.size()) > 2 * k) return false;
    return oracle::verify_cover(*outcome.cover, squared_distances(sol), delta, eps, tol);
  }
  return certificate_bound_check(G, outcome, k, tol).holds;
}

}  // namespace sparsecut::structure
