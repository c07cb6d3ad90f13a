#include "sparsecut/metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "sparsecut/errors.hpp"
#include "sparsecut/random.hpp"

namespace sparsecut::metric {

static_assert(std::endian::native == std::endian::little,
              "binary distance format assumes a little-endian host");

double energy(const Graph& G, const DistanceMatrix& d) {
  if (d.n() != G.n()) throw std::invalid_argument("energy: size mismatch");
  double s = 0;
  for (const auto& e : G.edges()) s += d(e.u, e.v);
  return s / (2.0 * G.degree() * G.n());
}

double diameter(const VertexSet& S, const DistanceMatrix& d) {
  if (S.empty()) throw std::invalid_argument("diameter of empty set");
  double best = 0;
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j) best = std::max(best, d(S[i], S[j]));
  return best;
}

VertexSet ball(int u, double radius, const DistanceMatrix& d) {
  VertexSet out;
  for (int v = 0; v < d.n(); ++v)
    if (d(u, v) <= radius) out.push_back(v);
  return out;
}

double dist_to_set(int u, const VertexSet& U, const DistanceMatrix& d) {
  if (U.empty()) throw std::invalid_argument("distance to empty set");
  double best = std::numeric_limits<double>::infinity();
  for (int v : U) best = std::min(best, d(u, v));
  return best;
}

TriangleReport triangle_scan(const DistanceMatrix& d) {
  TriangleReport rep;
  const int n = d.n();
  const auto& m = d.values();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (m(u, v) != m(v, u)) rep.symmetric = false;
      const double duv = m(u, v);
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        rep.max_violation = std::max(rep.max_violation, duv - m(u, w) - m(w, v));
      }
    }
  return rep;
}

DistortionReport distorted_pairs(const DistanceMatrix& d, const DistanceMatrix& d_prime,
                                 double factor, double threshold, double floor) {
  if (d.n() != d_prime.n()) throw std::invalid_argument("distorted_pairs: size mismatch");
  DistortionReport rep;
  rep.factor = factor;
  rep.threshold = threshold;
  for (int u = 0; u < d.n(); ++u)
    for (int v = u + 1; v < d.n(); ++v) {
      const double a = d(u, v), b = d_prime(u, v);
      if (b <= floor) continue;
      if (b > factor * a) ++rep.violating_pairs;
      if (a > 0) {
        rep.max_ratio = std::max(rep.max_ratio, b / a);
      } else if (b > 0) {
        rep.max_ratio = std::numeric_limits<double>::infinity();
      }
    }
  rep.within_threshold = static_cast<double>(rep.violating_pairs) <= threshold;
  return rep;
}

int reduced_dimension(double eps) {
  if (!(eps > 0 && eps <= 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2]");
  return static_cast<int>(std::ceil(48.0 * std::log(8.0 / eps)));
}

Eigen::MatrixXd gaussian_projection(const Eigen::MatrixXd& vectors, int h, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(vectors.cols(), h);
  for (int j = 0; j < h; ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = normal(rng);
  return (vectors * g) / std::sqrt(static_cast<double>(h));
}

DimReduceResult gaussian_dim_reduce(const Graph& G, const EmbeddingSolution& sol, double eps,
                                    std::uint64_t seed, const DimReduceOptions& opts) {
  const int h = opts.dimension ? *opts.dimension : reduced_dimension(eps);
  if (opts.dimension && !(eps > 0 && eps <= 0.5))
    throw std::invalid_argument("eps must lie in (0, 1/2]");
  if (h < 1) throw std::invalid_argument("reduced dimension must be positive");
  const int n = sol.n();
  const auto dx2 = squared_distances(sol);
  const auto dx = euclidean_distances(sol);
  const double ex = energy(G, dx), ex2 = energy(G, dx2);
  const double budget = eps * static_cast<double>(n) * n;
  constexpr double slack = 1e-12;
  const double floor = slack * dx2.values().maxCoeff();

  for (int attempt = 1; attempt <= opts.retry_cap; ++attempt) {
    EmbeddingSolution z;
    z.vectors = gaussian_projection(sol.vectors, h, mix_seed(seed, attempt));
    z.kind = EmbeddingKind::reduced;
    z.tolerance = sol.tolerance;
    const auto dz2 = squared_distances(z);
    const auto dz = euclidean_distances(z);
    const double ez = energy(G, dz), ez2 = energy(G, dz2);
    // x^2 > 2 z^2  <=>  z^2 < x^2 / 2
    auto rep = distorted_pairs(dz2, dx2, 2.0, budget, floor);
    const bool ok = ez <= 4.0 * ex + slack && ez2 <= 4.0 * ex2 + slack && rep.within_threshold;
    if (ok) {
      z.objective = ez2;
      DimReduceResult res;
      res.reduced = std::move(z);
      res.distortion = rep;
      res.h = h;
      res.attempts = attempt;
      res.energy_ratio_linear = ex > 0 ? ez / ex : 0;
      res.energy_ratio_squared = ex2 > 0 ? ez2 / ex2 : 0;
      return res;
    }
  }
  throw RandomnessFailure("gaussian_dim_reduce: no valid projection after " +
                          std::to_string(opts.retry_cap) + " attempts");
}

EmbedResult embed_l22_to_l2(const EmbeddingSolution& sol, std::uint64_t seed, int repetitions,
                            double triangle_tol) {
  const int n = sol.n();
  const auto d = squared_distances(sol);
  if (triangle_scan(d).max_violation > triangle_tol)
    throw std::invalid_argument("embed_l22_to_l2: squared distances are not a metric");

  EmbedResult res;
  res.embedded.kind = EmbeddingKind::embedded;
  res.embedded.tolerance = sol.tolerance;
  if (d.values().maxCoeff() == 0.0) {
    res.embedded.vectors = Eigen::MatrixXd::Zero(n, 1);
    res.distortion = 1;
    res.coordinates = 1;
    return res;
  }

  std::vector<VertexSet> anchors;
  for (int v = 0; v < n; ++v) anchors.push_back({v});
  const int levels = std::max(1, static_cast<int>(std::floor(std::log2(n))));
  const int reps = repetitions > 0 ? repetitions : levels + 1;
  auto rng = make_rng(seed, 41);
  for (int j = 1; j <= levels; ++j) {
    std::bernoulli_distribution keep(std::ldexp(1.0, -j));
    for (int t = 0; t < reps; ++t) {
      VertexSet A;
      for (int v = 0; v < n; ++v)
        if (keep(rng)) A.push_back(v);
      if (A.empty()) A.push_back(std::uniform_int_distribution<int>(0, n - 1)(rng));
      anchors.push_back(std::move(A));
    }
  }

  Eigen::MatrixXd y(n, static_cast<Eigen::Index>(anchors.size()));
  for (std::size_t c = 0; c < anchors.size(); ++c)
    for (int v = 0; v < n; ++v) y(v, static_cast<Eigen::Index>(c)) = dist_to_set(v, anchors[c], d);

  // scale so that min over pairs of d_y / d_x^2 equals one; pairs inside the noise floor are skipped
  double scale = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double dx = d(u, v);
      if (dx <= triangle_tol) continue;
      const double dy = (y.row(u) - y.row(v)).norm();
      scale = std::max(scale, dx / dy);
    }
  y *= scale;
  double worst = 1;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const double dx = d(u, v);
      if (dx <= triangle_tol) continue;
      worst = std::max(worst, (y.row(u) - y.row(v)).norm() / dx);
    }
  res.embedded.vectors = std::move(y);
  res.distortion = worst;
  res.coordinates = static_cast<int>(anchors.size());
  return res;
}

void write_binary(std::ostream& out, const DistanceMatrix& d) {
  const std::uint32_t header[2] = {static_cast<std::uint32_t>(d.n()),
                                   static_cast<std::uint32_t>(d.kind())};
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < d.n(); ++j) {
      const double v = d(i, j);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  if (!out) throw std::runtime_error("write_binary: stream failure");
}

DistanceMatrix read_binary(std::istream& in) {
  std::uint32_t header[2] = {0, 0};
  if (!in.read(reinterpret_cast<char*>(header), sizeof header))
    throw std::runtime_error("read_binary: truncated header");
  if (header[1] > 3) throw std::runtime_error("read_binary: unknown kind tag");
  const int n = static_cast<int>(header[0]);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v;
      if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::runtime_error("read_binary: truncated payload");
      m(i, j) = v;
    }
  return DistanceMatrix(std::move(m), static_cast<DistanceKind>(header[1]));
}

}  // namespace sparsecut::metric
