#include "metric_ipm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sparsecut/errors.hpp"

namespace sparsecut::sdp::detail {

namespace {

inline int pair_index(int i, int j, int m) {  // i < j < m
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

struct Slack {
  std::array<int, 3> idx;
  std::array<signed char, 3> coef;
  int len;
};

// Linear operator A_e on symmetric (n-1)x(n-1) matrices written as
// sigma/2 (u v^T + v u^T), with code -1 standing for the all-ones vector.
struct PairForm {
  int u, v;
  double sigma;
};

struct Bilinear {
  const Eigen::MatrixXd& P;
  Eigen::VectorXd rows;
  double total;
  explicit Bilinear(const Eigen::MatrixXd& M) : P(M), rows(M.rowwise().sum()), total(rows.sum()) {}
  double operator()(int x, int y) const {
    if (x >= 0 && y >= 0) return P(x, y);
    if (x >= 0) return rows[x];
    if (y >= 0) return rows[y];
    return total;
  }
};

class MetricProgram {
 public:
  MetricProgram(const Graph& G, const std::vector<QuotientBlock>& blocks)
      : n_(G.n()), pairs_(n_ * (n_ - 1) / 2) {
    for (const auto& b : blocks) {
      if (b.points < 2) continue;
      blocks_.push_back(b);
      offsets_.push_back(vars_);
      vars_ += b.points * (b.points - 1) / 2;
    }
    if (blocks_.empty()) throw std::invalid_argument("metric program: no variable blocks");

    pair_vars_.assign(pairs_, {});
    var_pairs_.assign(vars_, {});
    a_ = Eigen::VectorXd::Zero(vars_);
    c_ = Eigen::VectorXd::Zero(vars_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) {
        const int e = pair_index(u, v, n_);
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
          const int qu = blocks_[b].label[u], qv = blocks_[b].label[v];
          if (qu == qv) continue;
          const int var = offsets_[b] + pair_index(std::min(qu, qv), std::max(qu, qv), blocks_[b].points);
          pair_vars_[e].push_back(var);
          var_pairs_[var].push_back(e);
          a_[var] += 1.0;
        }
      }
    const double w = 1.0 / (2.0 * G.degree() * n_);
    for (const auto& ed : G.edges())
      for (int var : pair_vars_[pair_index(ed.u, ed.v, n_)]) c_[var] += w;
    identity_map_ = blocks_.size() == 1 && vars_ == pairs_;

    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int m = blocks_[b].points, off = offsets_[b];
      if (m == 2) {
        slacks_.push_back({{off, 0, 0}, {1, 0, 0}, 1});
        continue;
      }
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int l = j + 1; l < m; ++l) {
            const int ij = off + pair_index(i, j, m), jl = off + pair_index(j, l, m),
                      il = off + pair_index(i, l, m);
            slacks_.push_back({{ij, jl, il}, {1, 1, -1}, 3});
            slacks_.push_back({{ij, jl, il}, {1, -1, 1}, 3});
            slacks_.push_back({{ij, jl, il}, {-1, 1, 1}, 3});
          }
    }

    forms_.resize(pairs_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        forms_[pair_index(u, v, n_)] = u == 0 ? PairForm{v - 1, -1, 1.0} : PairForm{u - 1, v - 1, -1.0};
  }

  int variables() const { return vars_; }
  int slack_count() const { return static_cast<int>(slacks_.size()); }
  int cone_order() const { return n_ - 1; }
  const Eigen::VectorXd& equality() const { return a_; }
  const Eigen::VectorXd& cost() const { return c_; }
  const std::vector<QuotientBlock>& blocks() const { return blocks_; }
  const std::vector<int>& offsets() const { return offsets_; }

  Eigen::VectorXd initial_point() const {
    Eigen::VectorXd y = Eigen::VectorXd::Ones(vars_);
    return y * (static_cast<double>(n_) * n_ / a_.dot(y));
  }

  Eigen::VectorXd slack_values(const Eigen::VectorXd& y) const {
    Eigen::VectorXd s(slacks_.size());
    for (std::size_t k = 0; k < slacks_.size(); ++k) {
      const auto& sl = slacks_[k];
      double v = 0;
      for (int p = 0; p < sl.len; ++p) v += sl.coef[p] * y[sl.idx[p]];
      s[k] = v;
    }
    return s;
  }

  void add_slack_adjoint(const Eigen::VectorXd& w, Eigen::VectorXd& out) const {
    for (std::size_t k = 0; k < slacks_.size(); ++k) {
      const auto& sl = slacks_[k];
      for (int p = 0; p < sl.len; ++p) out[sl.idx[p]] += sl.coef[p] * w[k];
    }
  }

  void add_slack_schur(const Eigen::VectorXd& weight, Eigen::MatrixXd& M) const {
    for (std::size_t k = 0; k < slacks_.size(); ++k) {
      const auto& sl = slacks_[k];
      const double wk = weight[k];
      for (int p = 0; p < sl.len; ++p)
        for (int q = 0; q < sl.len; ++q) M(sl.idx[p], sl.idx[q]) += sl.coef[p] * sl.coef[q] * wk;
    }
  }

  Eigen::VectorXd pair_values(const Eigen::VectorXd& y) const {
    if (identity_map_) return y;
    Eigen::VectorXd d = Eigen::VectorXd::Zero(pairs_);
    for (int e = 0; e < pairs_; ++e)
      for (int var : pair_vars_[e]) d[e] += y[var];
    return d;
  }

  // Schoenberg matrix anchored at vertex 0: G_ij = (d_0i + d_0j - d_ij) / 2.
  Eigen::MatrixXd schoenberg(const Eigen::VectorXd& y) const {
    const Eigen::VectorXd d = pair_values(y);
    const int m = n_ - 1;
    Eigen::MatrixXd S(m, m);
    for (int i = 1; i < n_; ++i) {
      S(i - 1, i - 1) = d[pair_index(0, i, n_)];
      for (int j = i + 1; j < n_; ++j) {
        const double v = 0.5 * (d[pair_index(0, i, n_)] + d[pair_index(0, j, n_)] - d[pair_index(i, j, n_)]);
        S(i - 1, j - 1) = S(j - 1, i - 1) = v;
      }
    }
    return S;
  }

  // out += adjoint of the Schoenberg map applied to Z.
  void add_cone_adjoint(const Eigen::MatrixXd& Z, Eigen::VectorXd& out) const {
    const Eigen::VectorXd rows = Z.rowwise().sum();
    Eigen::VectorXd ge(pairs_);
    for (int e = 0; e < pairs_; ++e) {
      const auto& f = forms_[e];
      ge[e] = f.v < 0 ? rows[f.u] : -Z(f.u, f.v);
    }
    add_pair_vector(ge, out);
  }

  // M += E^T K E with K_ef = tr(A_e P A_f Q).
  void add_cone_schur(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q, Eigen::MatrixXd& M) const {
    const Bilinear bp(P), bq(Q);
    Eigen::MatrixXd K(pairs_, pairs_);
    for (int e = 0; e < pairs_; ++e) {
      const int u = forms_[e].u, v = forms_[e].v;
      const double se = forms_[e].sigma;
      for (int f = e; f < pairs_; ++f) {
        const int w = forms_[f].u, z = forms_[f].v;
        const double val = bp(v, w) * bq(z, u) + bp(v, z) * bq(w, u) + bp(u, w) * bq(z, v) +
                           bp(u, z) * bq(w, v);
        K(e, f) = K(f, e) = 0.25 * se * forms_[f].sigma * val;
      }
    }
    if (identity_map_) {
      M += K;
      return;
    }
    Eigen::MatrixXd KE = Eigen::MatrixXd::Zero(pairs_, vars_);
    for (int var = 0; var < vars_; ++var)
      for (int f : var_pairs_[var]) KE.col(var) += K.col(f);
    for (int var = 0; var < vars_; ++var)
      for (int e : var_pairs_[var]) M.row(var) += KE.row(e);
  }

 private:
  void add_pair_vector(const Eigen::VectorXd& ge, Eigen::VectorXd& out) const {
    if (identity_map_) {
      out += ge;
      return;
    }
    for (int var = 0; var < vars_; ++var)
      for (int e : var_pairs_[var]) out[var] += ge[e];
  }

  int n_;
  int pairs_;
  int vars_ = 0;
  std::vector<QuotientBlock> blocks_;
  std::vector<int> offsets_;
  std::vector<std::vector<int>> pair_vars_;
  std::vector<std::vector<int>> var_pairs_;
  std::vector<Slack> slacks_;
  std::vector<PairForm> forms_;
  Eigen::VectorXd a_, c_;
  bool identity_map_ = false;
};

// Equality-constrained Newton system [M -a; a^T 0], Jacobi scaled.
class SchurSystem {
 public:
  SchurSystem(const Eigen::MatrixXd& M, const Eigen::VectorXd& a) {
    dinv_ = M.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd Ms = dinv_.asDiagonal() * M * dinv_.asDiagonal();
    double jitter = 0;
    for (int attempt = 0; attempt < 10; ++attempt) {
      if (jitter > 0) Ms.diagonal().array() += jitter;
      llt_.compute(Ms);
      if (llt_.info() == Eigen::Success) {
        ok_ = true;
        break;
      }
      jitter = jitter == 0 ? 1e-14 : jitter * 100;
    }
    if (!ok_) return;
    as_ = dinv_.cwiseProduct(a);
    Ma_ = llt_.solve(as_);
    denom_ = as_.dot(Ma_);
    ok_ = denom_ > 0 && Ma_.allFinite();
  }

  bool ok() const { return ok_; }

  // Solves M dy - a dnu = h, a^T dy = 0.
  bool solve(const Eigen::VectorXd& h, Eigen::VectorXd& dy, double& dnu) const {
    const Eigen::VectorXd Mh = llt_.solve(dinv_.cwiseProduct(h));
    dnu = -as_.dot(Mh) / denom_;
    dy = dinv_.cwiseProduct(Mh + dnu * Ma_);
    return dy.allFinite() && std::isfinite(dnu);
  }

 private:
  Eigen::VectorXd dinv_, as_, Ma_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double denom_ = 0;
  bool ok_ = false;
};

double linear_step(const Eigen::VectorXd& s, const Eigen::VectorXd& ds) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (ds[k] < 0) a = std::min(a, -s[k] / ds[k]);
  return a;
}

double cone_step(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::MatrixXd& dX) {
  const auto L = chol.matrixL();
  Eigen::MatrixXd T = L.solve(dX);
  T = L.solve(T.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()[0];
  return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& M) { return 0.5 * (M + M.transpose()); }

}  // namespace

ProgramOutput solve_metric_program(const Graph& G, const std::vector<QuotientBlock>& blocks,
                                   const SolverOptions& opts) {
  MetricProgram prob(G, blocks);
  if (prob.variables() > opts.max_variables)
    throw ResourceLimit("metric program: " + std::to_string(prob.variables()) +
                        " distance variables exceed cap " + std::to_string(opts.max_variables));

  const int n = G.n();
  const double target = static_cast<double>(n) * n;
  const Eigen::VectorXd& a = prob.equality();
  const Eigen::VectorXd& c = prob.cost();
  const double barrier_order = prob.slack_count() + prob.cone_order();
  const double cscale = 1.0 + c.cwiseAbs().maxCoeff();

  Eigen::VectorXd y = prob.initial_point();
  Eigen::VectorXd s = prob.slack_values(y);
  Eigen::MatrixXd X = prob.schoenberg(y);
  Eigen::LLT<Eigen::MatrixXd> chol(X);
  if (chol.info() != Eigen::Success) throw SolverFailure("metric program: infeasible start");

  const double mu0 = std::max(c.dot(y), 1e-3) / barrier_order;
  Eigen::VectorXd z = mu0 * s.cwiseInverse();
  const int m = prob.cone_order();
  Eigen::MatrixXd Xinv = chol.solve(Eigen::MatrixXd::Identity(m, m));
  Eigen::MatrixXd Z = mu0 * Xinv;
  double nu = 0;

  SolveInfo info;
  info.variables = prob.variables();
  info.inequalities = prob.slack_count();
  constexpr double tau = 0.95;
  bool converged = false;
  double comp = 0, dual_res = 0;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    Eigen::VectorXd rd = c - nu * a;
    {
      Eigen::VectorXd adj = Eigen::VectorXd::Zero(prob.variables());
      prob.add_slack_adjoint(z, adj);
      prob.add_cone_adjoint(Z, adj);
      rd -= adj;
    }
    comp = s.dot(z) + X.cwiseProduct(Z).sum();
    dual_res = rd.cwiseAbs().maxCoeff() / cscale;
    info.gap_bound = comp + std::abs(rd.dot(y));
    if (comp <= opts.gap && dual_res <= 1e-9) {
      converged = true;
      break;
    }
    const double mu = comp / barrier_order;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(prob.variables(), prob.variables());
    const Eigen::VectorXd zs = z.cwiseQuotient(s);
    prob.add_slack_schur(zs, M);
    prob.add_cone_schur(Xinv, Z, M);
    SchurSystem sys(M, a);
    if (!sys.ok()) break;
    ++info.iterations;

    auto direction = [&](double sigma_mu, const Eigen::VectorXd& lin_corr, const Eigen::MatrixXd& cone_corr,
                         Eigen::VectorXd& dy, Eigen::VectorXd& ds, Eigen::MatrixXd& dX,
                         Eigen::VectorXd& dz, Eigen::MatrixXd& dZ, double& dnu) {
      // dz = (sigma mu - corr)/s - z - (z/s) ds ; dZ = sigma mu X^-1 - Z - corr - sym(X^-1 dX Z)
      const Eigen::VectorXd zt = (Eigen::VectorXd::Constant(s.size(), sigma_mu) - lin_corr).cwiseQuotient(s) - z;
      const Eigen::MatrixXd Zt = sigma_mu * Xinv - Z - cone_corr;
      Eigen::VectorXd h = -rd;
      prob.add_slack_adjoint(zt, h);
      prob.add_cone_adjoint(Zt, h);
      if (!sys.solve(h, dy, dnu)) return false;
      ds = prob.slack_values(dy);
      dX = prob.schoenberg(dy);
      dz = zt - zs.cwiseProduct(ds);
      dZ = Zt - sym(Xinv * dX * Z);
      return true;
    };

    Eigen::VectorXd dy, ds, dz;
    Eigen::MatrixXd dX, dZ;
    double dnu = 0;
    const Eigen::VectorXd zero_lin = Eigen::VectorXd::Zero(s.size());
    const Eigen::MatrixXd zero_cone = Eigen::MatrixXd::Zero(m, m);
    if (!direction(0.0, zero_lin, zero_cone, dy, ds, dX, dz, dZ, dnu)) break;

    Eigen::LLT<Eigen::MatrixXd> cholZ(Z);
    if (cholZ.info() != Eigen::Success) break;
    double ap = std::min(1.0, tau * std::min(linear_step(s, ds), cone_step(chol, dX)));
    double ad = std::min(1.0, tau * std::min(linear_step(z, dz), cone_step(cholZ, dZ)));
    const double mu_aff = ((s + ap * ds).dot(z + ad * dz) + (X + ap * dX).cwiseProduct(Z + ad * dZ).sum()) /
                          barrier_order;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    const Eigen::VectorXd lin_corr = ds.cwiseProduct(dz);
    const Eigen::MatrixXd cone_corr = sym(Xinv * dX * dZ);
    if (!direction(sigma * mu, lin_corr, cone_corr, dy, ds, dX, dz, dZ, dnu)) break;
    ap = std::min(1.0, tau * std::min(linear_step(s, ds), cone_step(chol, dX)));
    ad = std::min(1.0, tau * std::min(linear_step(z, dz), cone_step(cholZ, dZ)));
    if (ap < 1e-12 && ad < 1e-12) break;

    Eigen::VectorXd y_next = y + ap * dy;
    y_next *= target / a.dot(y_next);
    Eigen::VectorXd s_next = prob.slack_values(y_next);
    Eigen::MatrixXd X_next = prob.schoenberg(y_next);
    Eigen::LLT<Eigen::MatrixXd> chol_next(X_next);
    if (chol_next.info() != Eigen::Success || s_next.minCoeff() <= 0) break;
    y = std::move(y_next);
    s = std::move(s_next);
    X = std::move(X_next);
    chol = std::move(chol_next);
    Xinv = chol.solve(Eigen::MatrixXd::Identity(m, m));
    z += ad * dz;
    Z = sym(Z + ad * dZ);
    nu += ad * dnu;
    ++info.accepted_steps;
  }

  if (!converged && !(info.gap_bound <= opts.max_gap && dual_res <= 1e-6))
    throw SolverFailure("metric program: no convergence after " + std::to_string(info.iterations) +
                        " iterations (complementarity " + std::to_string(comp) + ", dual residual " +
                        std::to_string(dual_res) + ")");

  ProgramOutput out;
  out.info = info;
  out.total = Eigen::MatrixXd::Zero(n, n);
  const auto& bl = prob.blocks();
  std::size_t used = 0;
  for (const auto& b : blocks) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    if (b.points >= 2) {
      const int off = prob.offsets()[used];
      const auto& lab = bl[used].label;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          if (lab[u] == lab[v]) continue;
          const double val = y[off + pair_index(std::min(lab[u], lab[v]), std::max(lab[u], lab[v]), b.points)];
          D(u, v) = D(v, u) = val;
        }
      ++used;
    }
    out.total += D;
    out.block_distances.push_back(std::move(D));
  }
  return out;
}

}  // namespace sparsecut::sdp::detail
