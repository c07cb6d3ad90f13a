#include "sparsecut/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "metric_ipm.hpp"
#include "sparsecut/errors.hpp"
#include "sparsecut/metric.hpp"
#include "sparsecut/random.hpp"

namespace sparsecut::sdp {

namespace {

double normalization_target(int n) { return static_cast<double>(n) * n; }

// Classical multidimensional scaling of a squared-distance matrix.
Eigen::MatrixXd recover_vectors(const Eigen::MatrixXd& D) {
  const int n = static_cast<int>(D.rows());
  const Eigen::MatrixXd J =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd B = -0.5 * J * D * J;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success) throw SolverFailure("vector recovery: eigensolver failed");
  std::vector<int> keep;
  for (int i = n - 1; i >= 0; --i)
    if (es.eigenvalues()[i] >= 1e-9) keep.push_back(i);
  if (keep.empty()) return Eigen::MatrixXd::Zero(n, 1);
  Eigen::MatrixXd X(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    X.col(static_cast<Eigen::Index>(c)) =
        es.eigenvectors().col(keep[c]) * std::sqrt(es.eigenvalues()[keep[c]]);
  return X;
}

void normalize_vectors(Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows());
  double s = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) s += (X.row(u) - X.row(v)).squaredNorm();
  if (s > 0) X *= std::sqrt(normalization_target(n) / s);
}

EmbeddingSolution finish_solution(const Graph& G, const Eigen::MatrixXd& D, double tol) {
  EmbeddingSolution sol;
  sol.vectors = recover_vectors(D);
  normalize_vectors(sol.vectors);
  sol.kind = EmbeddingKind::arv_optimal;
  sol.tolerance = tol;
  sol.objective = arv_objective(G, sol);
  return sol;
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& M) {
  Eigen::MatrixXd S = 0.5 * (M + M.transpose());
  for (Eigen::Index i = 0; i < S.rows(); ++i) S(i, i) = 0;
  return S.cwiseMax(0.0);
}

}  // namespace

double arv_objective(const Graph& G, const EmbeddingSolution& sol) {
  if (sol.n() != G.n()) throw std::invalid_argument("arv_objective: size mismatch");
  double s = 0;
  for (const auto& e : G.edges()) s += (sol.vectors.row(e.u) - sol.vectors.row(e.v)).squaredNorm();
  return s / (2.0 * G.degree() * G.n());
}

EmbeddingSolution embed_integral_cut(const Graph& G, const VertexSet& S) {
  const int n = G.n();
  const VertexSet set = make_vertex_set(S, n);
  const int s = static_cast<int>(set.size());
  if (s == 0 || 2 * s > n)
    throw std::invalid_argument("embed_integral_cut: need 0 < |S| <= n/2");
  EmbeddingSolution sol;
  sol.vectors = Eigen::MatrixXd::Zero(n, 1);
  const double value = std::sqrt(normalization_target(n) / (static_cast<double>(s) * (n - s)));
  for (int v : set) sol.vectors(v, 0) = value;
  sol.kind = EmbeddingKind::integral_cut;
  sol.tolerance = 0;
  sol.objective = arv_objective(G, sol);
  return sol;
}

FeasibilityReport check_feasibility(const EmbeddingSolution& sol, double tol) {
  FeasibilityReport rep;
  const auto d = squared_distances(sol);
  rep.max_triangle_violation = std::max(0.0, metric::triangle_scan(d).max_violation);
  const double target = normalization_target(sol.n());
  rep.normalization_residual = std::abs(d.pair_sum() - target) / target;
  rep.objective = sol.objective;
  rep.pass = rep.max_triangle_violation <= tol && rep.normalization_residual <= tol;
  return rep;
}

EmbeddingSolution solve_arv(const Graph& G, const SolverOptions& opts, SolveInfo* info) {
  const int n = G.n();
  if (n > opts.max_n)
    throw ResourceLimit("solve_arv: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(opts.max_n));
  detail::QuotientBlock block;
  block.points = n;
  block.label.resize(n);
  for (int v = 0; v < n; ++v) block.label[v] = v;
  auto out = detail::solve_metric_program(G, {block}, opts);
  if (info) *info = out.info;
  auto sol = finish_solution(G, out.total, opts.tol);
  auto rep = check_feasibility(sol, opts.tol);
  if (!rep.pass)
    throw SolverFailure("solve_arv: recovered vectors infeasible (triangle " +
                        std::to_string(rep.max_triangle_violation) + ", normalization " +
                        std::to_string(rep.normalization_residual) + ")");
  return sol;
}

SAResult solve_sa_for_set(const Graph& G, const std::vector<int>& C, const SolverOptions& opts,
                          SolveInfo* info) {
  const int n = G.n();
  if (n > opts.max_n)
    throw ResourceLimit("solve_sa_for_set: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(opts.max_n));
  const VertexSet R = make_vertex_set(C, n);
  if (R.empty() || R.size() != C.size())
    throw std::invalid_argument("solve_sa_for_set: C must be nonempty without repeats");
  if (R.size() > 10) throw std::invalid_argument("solve_sa_for_set: |C| must be at most 10");
  const int c = static_cast<int>(R.size());
  const std::size_t patterns = std::size_t{1} << c;

  std::vector<int> slot(n, -1);
  for (int i = 0; i < c; ++i) slot[R[i]] = i;

  // Patterns b and ~b impose identical constraints; only b with bit 0 clear carries mass.
  std::vector<detail::QuotientBlock> blocks;
  std::vector<std::size_t> block_pattern;
  for (std::size_t b = 0; b < patterns; b += 2) {
    detail::QuotientBlock q;
    q.label.assign(n, -1);
    const bool has_one = b != 0;
    int next = has_one ? 2 : 1;
    for (int v = 0; v < n; ++v) {
      if (slot[v] >= 0) q.label[v] = static_cast<int>((b >> slot[v]) & 1u);
      else q.label[v] = next++;
    }
    q.points = next;
    blocks.push_back(std::move(q));
    block_pattern.push_back(b);
  }

  auto out = detail::solve_metric_program(G, blocks, opts);
  if (info) *info = out.info;

  SAResult res;
  res.solution = finish_solution(G, out.total, opts.tol);
  const double target = normalization_target(n);
  // Vector recovery renormalizes; carry the same scale to every block.
  const Eigen::MatrixXd Dx = squared_distances(res.solution).values();
  double total_sum = 0, block_sum = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      total_sum += Dx(u, v);
      block_sum += out.total(u, v);
    }
  const double scale = block_sum > 0 ? total_sum / block_sum : 1.0;

  res.sa.R = R;
  res.sa.p.assign(patterns, 0.0);
  res.sa.d.assign(patterns, DistanceMatrix::zeros(n, DistanceKind::sampled));
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    DistanceMatrix db(symmetrized(out.block_distances[i] * scale), DistanceKind::sampled);
    res.sa.p[block_pattern[i]] = db.pair_sum() / target;
    res.sa.d[block_pattern[i]] = std::move(db);
  }
  double psum = 0;
  for (double p : res.sa.p) psum += p;
  if (psum > 0)
    for (double& p : res.sa.p) p /= psum;

  auto rep = check_sa_feasibility(res.solution, res.sa, opts.tol);
  if (!rep.pass)
    throw SolverFailure("solve_sa_for_set: recovered solution infeasible (decomposition " +
                        std::to_string(rep.decomposition_residual) + ", triangle " +
                        std::to_string(rep.max_triangle_violation) + ")");
  return res;
}

SAFeasibilityReport check_sa_feasibility(const EmbeddingSolution& sol, const SASolution& sa,
                                         double tol) {
  SAFeasibilityReport rep;
  const int n = sol.n();
  if (sa.n() != n || sa.d.size() != sa.p.size() || sa.p.size() != (std::size_t{1} << sa.R.size()))
    throw std::invalid_argument("check_sa_feasibility: inconsistent SA solution shape");
  const double target = normalization_target(n);
  double psum = 0;
  rep.min_probability = sa.p.empty() ? 0 : sa.p.front();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t b = 0; b < sa.p.size(); ++b) {
    psum += sa.p[b];
    rep.min_probability = std::min(rep.min_probability, sa.p[b]);
    const auto& d = sa.d[b];
    rep.mass_residual = std::max(rep.mass_residual, std::abs(d.pair_sum() - target * sa.p[b]) / target);
    rep.max_triangle_violation =
        std::max(rep.max_triangle_violation, metric::triangle_scan(d).max_violation);
    for (std::size_t i = 0; i < sa.R.size(); ++i)
      for (std::size_t j = i + 1; j < sa.R.size(); ++j)
        if (((b >> i) & 1u) == ((b >> j) & 1u))
          rep.max_same_side_distance = std::max(rep.max_same_side_distance, d(sa.R[i], sa.R[j]));
    sum += d.values();
  }
  rep.probability_residual = std::abs(psum - 1.0);
  const auto dx = squared_distances(sol);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      rep.decomposition_residual = std::max(rep.decomposition_residual, std::abs(sum(u, v) - dx(u, v)));
  // distance residuals are compared relative to the normalized scale, which is n^2 / C(n,2) per pair
  const double dist_tol = tol * std::max(1.0, 2.0 * n / (n - 1.0));
  rep.pass = rep.probability_residual <= tol && rep.min_probability >= -tol &&
             rep.mass_residual <= tol && rep.max_triangle_violation <= dist_tol &&
             rep.max_same_side_distance <= dist_tol && rep.decomposition_residual <= dist_tol;
  return rep;
}

SASolution integral_sa(const EmbeddingSolution& integral, const VertexSet& S,
                       const std::vector<int>& R) {
  const int n = integral.n();
  const VertexSet set = make_vertex_set(S, n);
  if (R.empty() || R.size() > 20) throw std::invalid_argument("integral_sa: bad R size");
  std::vector<char> in(n, 0);
  for (int v : set) in[v] = 1;
  SASolution sa;
  sa.R = R;
  const std::size_t patterns = std::size_t{1} << R.size();
  sa.p.assign(patterns, 0.0);
  sa.d.assign(patterns, DistanceMatrix::zeros(n, DistanceKind::sampled));
  std::size_t bR = 0;
  for (std::size_t i = 0; i < R.size(); ++i)
    if (in.at(R[i])) bR |= std::size_t{1} << i;
  sa.p[bR] = 1.0;
  sa.d[bR] = DistanceMatrix(squared_distances(integral).values(), DistanceKind::sampled);
  return sa;
}

DistanceMatrix sample_cut_metric(const SASolution& sa, std::uint64_t seed) {
  double total = 0;
  for (double p : sa.p) total += std::max(0.0, p);
  if (!(total > 0)) throw std::invalid_argument("sample_cut_metric: all probabilities are zero");
  auto rng = make_rng(seed, 7);
  std::uniform_real_distribution<double> unif(0.0, total);
  const double r = unif(rng);
  double acc = 0;
  std::size_t pick = sa.p.size();
  for (std::size_t b = 0; b < sa.p.size(); ++b) {
    if (sa.p[b] <= 0) continue;
    acc += sa.p[b];
    pick = b;
    if (r < acc) break;
  }
  return DistanceMatrix(sa.d[pick].values() / sa.p[pick], DistanceKind::sampled);
}

}  // namespace sparsecut::sdp
