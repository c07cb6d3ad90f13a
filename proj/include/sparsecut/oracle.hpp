#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sparsecut/cover.hpp"
#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"

namespace sparsecut::oracle {

struct OracleResult {
  Rational value;
  std::vector<VertexSet> witness;
  std::uint64_t enumerated_count = 0;
};

inline constexpr int kPhiCap = 20;

/// Exact phi(G) over all 0 < |S| <= n/2. Lexicographically smallest witness.
OracleResult brute_phi(const Graph& G, int cap = kPhiCap);

/// Exact phi_k(G): min over k disjoint nonempty sets of max expansion.
/// Allowed for n <= 12, or k <= 3 with n <= 16. Sets may be all of V (k = 1).
OracleResult brute_phi_k(const Graph& G, int k);
bool phi_k_within_cap(int n, int k);

/// Exact sse_s(G) = min over 0 < |S| <= s of phi(S) (S = V allowed).
OracleResult brute_sse(const Graph& G, int s, int cap = kPhiCap);

/// Every set has diameter <= delta (+tol) under d and the union has
/// at least (1 - eps) n vertices.
bool verify_cover(const Cover& cover, const DistanceMatrix& d, double delta,
                  double eps, double tol = 1e-9);

struct CertificateReport {
  bool well_formed = false;
  Certificate::Variant variant = Certificate::Variant::spectral;
  std::vector<double> values;  // recomputed R(f_i) or phi(S_i)
  double implied_bound = 0;    // spectral: 2 max R(f_i) >= lambda_k; expansion: max phi >= phi_k
  double lambda_k = 0;
  std::optional<double> phi_k;  // oracle value when within cap
  bool bound_holds = false;
};

/// Throws std::invalid_argument for malformed certificates (overlap, empty
/// or zero members).
CertificateReport verify_certificate(const Graph& G, const Certificate& cert,
                                     double tol = 1e-9);

/// phi(S) for S possibly equal to V (value 0), used by the enumerations.
Rational set_expansion(const Graph& G, std::uint64_t mask);

}  // namespace sparsecut::oracle
