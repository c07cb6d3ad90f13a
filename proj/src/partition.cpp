#include "sparsecut/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sparsecut/metric.hpp"
#include "sparsecut/random.hpp"

namespace sparsecut::partition {

std::string to_string(PaddedScheme s) { return s == PaddedScheme::grid ? "grid" : "ckr"; }
std::string to_string(LipschitzScheme s) {
  return s == LipschitzScheme::ball_carving ? "ball-carving" : "ckr";
}
PaddedScheme padded_scheme_from_string(const std::string& s) {
  if (s == "grid") return PaddedScheme::grid;
  if (s == "ckr") return PaddedScheme::ckr;
  throw std::invalid_argument("unknown padded scheme: " + s);
}
LipschitzScheme lipschitz_scheme_from_string(const std::string& s) {
  if (s == "ball-carving") return LipschitzScheme::ball_carving;
  if (s == "ckr") return LipschitzScheme::ckr;
  throw std::invalid_argument("unknown lipschitz scheme: " + s);
}

namespace {

double harmonic(int n) {
  double h = 0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

void canonicalize(std::vector<VertexSet>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
}

std::vector<VertexSet> ckr_blocks(const Eigen::MatrixXd& x, double delta, Rng& rng) {
  const int n = static_cast<int>(x.rows());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const double R = std::uniform_real_distribution<double>(delta / 4, delta / 2)(rng);
  std::vector<int> owner(n, -1);
  for (int c : order)
    for (int v = 0; v < n; ++v)
      if (owner[v] < 0 && (x.row(v) - x.row(c)).norm() <= R) owner[v] = c;
  std::map<int, VertexSet> by_center;
  for (int v = 0; v < n; ++v) by_center[owner[v]].push_back(v);
  std::vector<VertexSet> blocks;
  for (auto& [c, b] : by_center) blocks.push_back(std::move(b));
  return blocks;
}

void require_positive(double delta) {
  if (!(delta > 0)) throw std::invalid_argument("partition: delta must be positive");
}

}  // namespace

Partition padded_partition(const EmbeddingSolution& points, double delta, double eps,
                           std::uint64_t seed, PaddedScheme scheme) {
  require_positive(delta);
  if (!(eps > 0 && eps < 1)) throw std::invalid_argument("padded_partition: eps must lie in (0,1)");
  const Eigen::MatrixXd& x = points.vectors;
  const int n = points.n(), h = std::max(1, points.dim());
  auto rng = make_rng(seed, 101);
  Partition P;
  P.delta = delta;
  P.seed = seed;
  P.scheme = to_string(scheme);
  if (scheme == PaddedScheme::ckr) {
    P.blocks = ckr_blocks(x, delta, rng);
    P.parameter = 8.0 * harmonic(n) / eps;
  } else {
    const double side = delta / std::sqrt(static_cast<double>(h));
    std::uniform_real_distribution<double> shift(0.0, side);
    std::vector<double> s(points.dim());
    for (auto& v : s) v = shift(rng);
    std::map<std::vector<long long>, VertexSet> cells;
    for (int v = 0; v < n; ++v) {
      std::vector<long long> key(points.dim());
      for (int j = 0; j < points.dim(); ++j)
        key[j] = static_cast<long long>(std::floor((x(v, j) + s[j]) / side));
      cells[key].push_back(v);
    }
    for (auto& [k, b] : cells) P.blocks.push_back(std::move(b));
    P.parameter = 2.0 * std::pow(static_cast<double>(h), 1.5) / eps;
  }
  canonicalize(P.blocks);
  return P;
}

double ball_carving_constant(int h) {
  if (h < 1) throw std::invalid_argument("ball_carving_constant: h must be positive");
  // V_{h-1}/V_h = Gamma(h/2 + 1) / (sqrt(pi) Gamma((h+1)/2))
  const double log_ratio = std::lgamma(h / 2.0 + 1.0) - std::lgamma((h + 1) / 2.0) - 0.5 * std::log(M_PI);
  return 4.0 * std::exp(log_ratio);
}

Partition lipschitz_partition(const EmbeddingSolution& points, double delta, std::uint64_t seed,
                              LipschitzScheme scheme) {
  require_positive(delta);
  const Eigen::MatrixXd& x = points.vectors;
  const int n = points.n(), h = std::max(1, points.dim());
  auto rng = make_rng(seed, 202);
  Partition P;
  P.delta = delta;
  P.seed = seed;
  P.scheme = to_string(scheme);
  if (scheme == LipschitzScheme::ckr) {
    P.blocks = ckr_blocks(x, delta, rng);
    P.parameter = 8.0 * harmonic(n);
    canonicalize(P.blocks);
    return P;
  }
  const double r = delta / 2;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> open(n);
  std::iota(open.begin(), open.end(), 0);
  Eigen::VectorXd c(points.dim());
  while (!open.empty()) {
    // uniform point of the union of radius-r balls around open points:
    // uniform in a random ball, kept with probability 1 / (balls covering it)
    const int i = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    for (int j = 0; j < points.dim(); ++j) c[j] = normal(rng);
    const double norm = c.norm();
    const double radius = r * std::pow(unif(rng), 1.0 / h);
    if (norm > 0) c *= radius / norm;
    c += x.row(i).transpose();
    std::vector<int> inside, rest;
    for (int v : open) ((x.row(v).transpose() - c).norm() <= r ? inside : rest).push_back(v);
    if (inside.empty()) continue;
    if (unif(rng) * static_cast<double>(inside.size()) >= 1.0) continue;
    P.blocks.push_back(std::move(inside));
    open = std::move(rest);
  }
  P.parameter = ball_carving_constant(h);
  canonicalize(P.blocks);
  return P;
}

double separation_frequency(const EmbeddingSolution& points, int u, int v, double delta,
                            int trials, std::uint64_t seed, LipschitzScheme scheme) {
  if (trials < 1) throw std::invalid_argument("separation_frequency: trials must be positive");
  int separated = 0;
  for (int t = 0; t < trials; ++t) {
    const auto P = lipschitz_partition(points, delta, mix_seed(seed, t), scheme);
    for (const auto& b : P.blocks) {
      const bool hu = std::binary_search(b.begin(), b.end(), u);
      const bool hv = std::binary_search(b.begin(), b.end(), v);
      if (hu != hv) {
        ++separated;
        break;
      }
      if (hu) break;
    }
  }
  return static_cast<double>(separated) / trials;
}

double estimate_lipschitz(const EmbeddingSolution& points, const std::vector<std::pair<int, int>>& pairs,
                          double delta, int trials, std::uint64_t seed, LipschitzScheme scheme) {
  double best = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    const double d = (points.vectors.row(u) - points.vectors.row(v)).norm();
    if (d <= 0) continue;
    const double f = separation_frequency(points, u, v, delta, trials, mix_seed(seed, 1000 + i), scheme);
    best = std::max(best, f * delta / d);
  }
  return best;
}

bool is_delta_bounded(const Partition& P, const DistanceMatrix& d, double tol) {
  std::vector<int> seen(d.n(), 0);
  for (const auto& b : P.blocks) {
    if (b.empty()) return false;
    for (int v : b) {
      if (v < 0 || v >= d.n() || seen[v]++) return false;
    }
    if (metric::diameter(b, d) > P.delta + tol) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

VertexSet interior(const VertexSet& block, double rho, const DistanceMatrix& d) {
  std::vector<char> in(d.n(), 0);
  for (int v : block) in.at(v) = 1;
  VertexSet out;
  for (int v : block) {
    bool ok = true;
    for (int w = 0; w < d.n() && ok; ++w)
      if (!in[w] && d(v, w) <= rho) ok = false;
    if (ok) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexSet> merge_small(const std::vector<VertexSet>& sets, int target,
                                   const WeightFn& weight) {
  if (target < 1) throw std::invalid_argument("merge_small: target must be positive");
  std::vector<std::size_t> order(sets.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<long long> w(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) w[i] = weight(sets[i]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  std::vector<VertexSet> out;
  std::vector<long long> out_w;
  for (std::size_t i = 0; i < order.size() && static_cast<int>(out.size()) < target; ++i) {
    out.push_back(sets[order[i]]);
    out_w.push_back(w[order[i]]);
  }
  while (static_cast<int>(out.size()) < target) {
    out.emplace_back();
    out_w.push_back(weight(out.back()));
  }
  for (std::size_t i = static_cast<std::size_t>(target); i < order.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(
        std::min_element(out_w.begin(), out_w.end()) - out_w.begin());
    auto& T = out[j];
    T.insert(T.end(), sets[order[i]].begin(), sets[order[i]].end());
    std::sort(T.begin(), T.end());
    out_w[j] = weight(T);
  }
  return out;
}

std::vector<Eigen::VectorXd> bump_functions(const std::vector<VertexSet>& T,
                                            const std::vector<VertexSet>& interiors, double alpha,
                                            double delta, const DistanceMatrix& d) {
  if (T.size() != interiors.size()) throw std::invalid_argument("bump_functions: size mismatch");
  if (!(alpha > 0 && delta > 0)) throw std::invalid_argument("bump_functions: alpha, delta must be positive");
  std::vector<int> owner(d.n(), -1);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (int v : T[i]) {
      if (owner.at(v) >= 0) throw std::invalid_argument("bump_functions: sets overlap");
      owner[v] = static_cast<int>(i);
    }
  std::vector<Eigen::VectorXd> fs;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (interiors[i].empty()) throw std::invalid_argument("bump_functions: empty interior");
    for (int v : interiors[i])
      if (owner.at(v) != static_cast<int>(i))
        throw std::invalid_argument("bump_functions: interior not inside its set");
    Eigen::VectorXd f(d.n());
    for (int v = 0; v < d.n(); ++v)
      f[v] = std::max(0.0, 1.0 - alpha * metric::dist_to_set(v, interiors[i], d) / delta);
    fs.push_back(std::move(f));
  }
  return fs;
}

Cover cover_transfer(const std::vector<VertexSet>& sets, const DistanceMatrix& d,
                     const DistanceMatrix& d_prime, double delta, double eps,
                     const std::string& metric_name) {
  if (d.n() != d_prime.n()) throw std::invalid_argument("cover_transfer: size mismatch");
  Cover out;
  out.metric = metric_name;
  for (const auto& S : sets) {
    if (!S.empty() && metric::diameter(S, d) > delta * (1 + 1e-12) + 1e-12)
      throw std::invalid_argument("cover_transfer: input set exceeds diameter delta");
    VertexSet best;
    for (int u : S) {
      VertexSet ball;
      for (int v : S)
        if (d_prime(u, v) <= 2 * delta) ball.push_back(v);
      const bool good = static_cast<double>(ball.size()) >= (1 - eps / 2) * static_cast<double>(S.size());
      if (good && ball.size() > best.size()) best = std::move(ball);
    }
    out.diameters.push_back(best.empty() ? 0.0 : metric::diameter(best, d_prime));
    out.sets.push_back(std::move(best));
  }
  out.covered_count = union_size(out.sets, d.n());
  return out;
}

}  // namespace sparsecut::partition
