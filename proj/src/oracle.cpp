#include "sparsecut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

#include "sparsecut/errors.hpp"
#include "sparsecut/metric.hpp"

namespace sparsecut::oracle {

namespace {

// cut / size with the degree factored out; den == 0 encodes +infinity.
struct Frac {
  std::int64_t num = 1;
  std::int64_t den = 0;
};

bool less(const Frac& a, const Frac& b) {
  if (a.den == 0) return false;
  if (b.den == 0) return true;
  return a.num * b.den < b.num * a.den;
}

const Frac& max_of(const Frac& a, const Frac& b) { return less(a, b) ? b : a; }

int mask_cut(const Graph& G, std::uint64_t mask) {
  int cut = 0;
  for (std::uint64_t m = mask; m; m &= m - 1) {
    const int v = std::countr_zero(m);
    cut += std::popcount(G.adjacency_mask(v) & ~mask);
  }
  return cut;
}

Frac mask_frac(const Graph& G, std::uint64_t mask) {
  return {mask_cut(G, mask), std::popcount(mask)};
}

VertexSet mask_to_set(std::uint64_t mask) {
  VertexSet s;
  for (std::uint64_t m = mask; m; m &= m - 1) s.push_back(std::countr_zero(m));
  return s;
}

// Lexicographic order on the sorted vertex lists.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  const auto sa = mask_to_set(a), sb = mask_to_set(b);
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
}

void require_mask_graph(const Graph& G, int cap) {
  if (G.n() > cap)
    throw ResourceLimit("oracle: n=" + std::to_string(G.n()) + " exceeds cap " +
                        std::to_string(cap));
  if (G.n() > 62) throw ResourceLimit("oracle: n too large for bitmask enumeration");
}

OracleResult min_over_sizes(const Graph& G, int max_size) {
  const int n = G.n();
  const std::uint64_t limit = std::uint64_t{1} << n;
  Frac best;
  std::uint64_t best_mask = 0;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    const int size = std::popcount(mask);
    if (size > max_size) continue;
    ++count;
    const Frac f = mask_frac(G, mask);
    if (less(f, best) || (!less(best, f) && best.den != 0 && lex_less(mask, best_mask))) {
      best = f;
      best_mask = mask;
    }
  }
  OracleResult res;
  res.value = Rational(best.num, best.den * G.degree());
  res.witness = {mask_to_set(best_mask)};
  res.enumerated_count = count;
  return res;
}

}  // namespace

Rational set_expansion(const Graph& G, std::uint64_t mask) {
  if (mask == 0) throw std::invalid_argument("expansion of empty set");
  const Frac f = mask_frac(G, mask);
  return Rational(f.num, f.den * G.degree());
}

OracleResult brute_phi(const Graph& G, int cap) {
  require_mask_graph(G, cap);
  return min_over_sizes(G, G.n() / 2);
}

OracleResult brute_sse(const Graph& G, int s, int cap) {
  if (s < 1) throw std::invalid_argument("brute_sse: s must be >= 1");
  require_mask_graph(G, cap);
  return min_over_sizes(G, std::min(s, G.n()));
}

bool phi_k_within_cap(int n, int k) { return n <= 12 || (k <= 3 && n <= 16); }

OracleResult brute_phi_k(const Graph& G, int k) {
  const int n = G.n();
  if (k < 1) throw std::invalid_argument("brute_phi_k: k must be >= 1");
  if (k > n) throw std::invalid_argument("brute_phi_k: k exceeds n");
  if (!phi_k_within_cap(n, k))
    throw ResourceLimit("brute_phi_k: (n=" + std::to_string(n) + ", k=" +
                        std::to_string(k) + ") exceeds enumeration cap");

  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t full = size - 1;
  std::vector<Frac> phi(size);
  for (std::uint64_t m = 1; m < size; ++m) phi[m] = mask_frac(G, m);

  // table[j][mask]: best max-expansion of j disjoint nonempty subsets of mask.
  std::vector<std::vector<Frac>> table(k + 1, std::vector<Frac>(size));
  std::vector<std::vector<std::uint64_t>> choice(k + 1, std::vector<std::uint64_t>(size, 0));
  for (std::uint64_t m = 0; m < size; ++m) table[0][m] = Frac{0, 1};
  std::uint64_t count = 0;
  for (int j = 1; j <= k; ++j) {
    for (std::uint64_t mask = 1; mask < size; ++mask) {
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t rest = mask ^ low;
      Frac best = table[j][rest];
      std::uint64_t pick = 0;  // 0: low vertex unused
      std::uint64_t sub = rest;
      while (true) {
        const std::uint64_t S = sub | low;
        ++count;
        const Frac cand = max_of(phi[S], table[j - 1][mask ^ S]);
        if (less(cand, best)) {
          best = cand;
          pick = S;
        }
        if (sub == 0) break;
        sub = (sub - 1) & rest;
      }
      table[j][mask] = best;
      choice[j][mask] = pick;
    }
  }

  OracleResult res;
  const Frac v = table[k][full];
  res.value = Rational(v.num, v.den * G.degree());
  std::uint64_t mask = full;
  for (int j = k; j >= 1;) {
    const std::uint64_t pick = choice[j][mask];
    if (pick == 0) {
      mask ^= mask & (~mask + 1);
      continue;
    }
    res.witness.push_back(mask_to_set(pick));
    mask ^= pick;
    --j;
  }
  std::sort(res.witness.begin(), res.witness.end());
  res.enumerated_count = count;
  return res;
}

bool verify_cover(const Cover& cover, const DistanceMatrix& d, double delta,
                  double eps, double tol) {
  for (const auto& s : cover.sets) {
    if (s.empty()) continue;
    if (metric::diameter(s, d) > delta + tol) return false;
  }
  const int covered = union_size(cover.sets, d.n());
  return covered >= (1.0 - eps) * d.n() - 1e-12;
}

CertificateReport verify_certificate(const Graph& G, const Certificate& cert,
                                     double tol) {
  CertificateReport rep;
  rep.variant = cert.variant;
  const int n = G.n();
  const int k = cert.k();
  if (k < 1) throw std::invalid_argument("certificate is empty");
  std::vector<int> owner(n, -1);
  auto claim = [&](int v, int i) {
    if (owner[v] != -1)
      throw std::invalid_argument("certificate members " + std::to_string(owner[v]) +
                                  " and " + std::to_string(i) + " overlap at vertex " +
                                  std::to_string(v));
    owner[v] = i;
  };

  const auto spectrum = laplacian_spectrum(G);
  rep.lambda_k = spectrum.eigenvalues.at(std::min(k, n) - 1);

  if (cert.variant == Certificate::Variant::spectral) {
    for (int i = 0; i < k; ++i) {
      const auto& f = cert.functions[i];
      if (f.size() != n) throw std::invalid_argument("certificate function has wrong size");
      if (f.squaredNorm() == 0.0) throw std::invalid_argument("certificate function is zero");
      for (int v = 0; v < n; ++v)
        if (f[v] != 0.0) claim(v, i);
      rep.values.push_back(rayleigh(G, f));
    }
    rep.implied_bound = 2.0 * *std::max_element(rep.values.begin(), rep.values.end());
    rep.bound_holds = rep.lambda_k <= rep.implied_bound + tol;
  } else {
    if (n > 62) throw ResourceLimit("expansion certificate check needs n <= 62");
    for (int i = 0; i < k; ++i) {
      const auto& s = cert.sets[i];
      if (s.empty()) throw std::invalid_argument("certificate set is empty");
      std::uint64_t mask = 0;
      for (int v : s) {
        if (v < 0 || v >= n) throw std::invalid_argument("certificate vertex out of range");
        claim(v, i);
        mask |= std::uint64_t{1} << v;
      }
      rep.values.push_back(to_double(set_expansion(G, mask)));
    }
    rep.implied_bound = *std::max_element(rep.values.begin(), rep.values.end());
    // phi_k >= lambda_k / 2 always; phi_k <= max phi(S_i) by definition.
    rep.bound_holds = rep.lambda_k / 2.0 <= rep.implied_bound + tol;
    if (phi_k_within_cap(n, k)) {
      rep.phi_k = to_double(brute_phi_k(G, k).value);
      rep.bound_holds = rep.bound_holds && *rep.phi_k <= rep.implied_bound + tol;
    }
  }
  rep.well_formed = true;
  return rep;
}

}  // namespace sparsecut::oracle
