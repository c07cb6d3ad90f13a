#include <gtest/gtest.h>

#include <cmath>

#include "sparsecut/errors.hpp"
#include "sparsecut/generators.hpp"
#include "sparsecut/metric.hpp"
#include "sparsecut/oracle.hpp"
#include "sparsecut/random.hpp"
#include "sparsecut/sdp.hpp"

using namespace sparsecut;

namespace {

constexpr double kObjTol = 1e-4;  // objective tolerance against oracles
constexpr double kTol = 1e-6;     // feasibility residuals

Graph two_k4() { return generators::disjoint_union(generators::complete(4), generators::complete(4)); }

void expect_sampled_metric_valid(const sdp::SASolution& sa, const DistanceMatrix& D) {
  const int n = D.n();
  EXPECT_LE(metric::triangle_scan(D).max_violation, kTol * n * n);
  EXPECT_NEAR(D.pair_sum(), double(n) * n, kTol * n * n);
  double across = -1;
  for (std::size_t i = 0; i < sa.R.size(); ++i)
    for (std::size_t j = i + 1; j < sa.R.size(); ++j) {
      const double v = D(sa.R[i], sa.R[j]);
      if (v < kTol * n * n) continue;
      if (across < 0) across = v;
      EXPECT_NEAR(v, across, kTol * n * n);
    }
}

}  // namespace

TEST(SolveArv, CompleteGraphBelowHalfCut) {
  for (int n : {4, 6}) {
    const auto sol = sdp::solve_arv(generators::complete(n));
    EXPECT_LE(sol.objective, (n / 2.0) / (n - 1) + kObjTol);
    EXPECT_TRUE(sdp::check_feasibility(sol, kTol).pass);
  }
}

TEST(SolveArv, C8AtMostQuarter) {
  const auto sol = sdp::solve_arv(generators::cycle(8));
  EXPECT_LE(sol.objective, 0.25 + kObjTol);
  EXPECT_EQ(sol.kind, EmbeddingKind::arv_optimal);
  EXPECT_NEAR(sol.objective, sdp::arv_objective(generators::cycle(8), sol), 1e-9);
}

TEST(SolveArv, SingleEdgeIsForced) {
  const auto sol = sdp::solve_arv(Graph(2, {{0, 1}}));
  EXPECT_NEAR(sol.objective, 1.0, kObjTol);
}

TEST(SolveArv, RelaxationBelowOracle) {
  for (const auto& G : {generators::cycle(10), two_k4(), generators::random_regular(12, 3, 2)}) {
    const auto sol = sdp::solve_arv(G);
    EXPECT_LE(sol.objective, to_double(oracle::brute_phi(G).value) + kObjTol);
    EXPECT_TRUE(sdp::check_feasibility(sol, kTol).pass);
  }
}

TEST(SolveArv, SizeCap) {
  sdp::SolverOptions o;
  o.max_n = 10;
  EXPECT_THROW(sdp::solve_arv(generators::cycle(12), o), ResourceLimit);
}

TEST(EmbedIntegralCut, C8Arc) {
  const auto G = generators::cycle(8);
  const auto sol = sdp::embed_integral_cut(G, {0, 1, 2, 3});
  const auto d = squared_distances(sol);
  EXPECT_DOUBLE_EQ(d(0, 4), 4.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(d.pair_sum(), 64.0);
  EXPECT_DOUBLE_EQ(sol.objective, 0.25);
  EXPECT_EQ(sol.kind, EmbeddingKind::integral_cut);
  const auto rep = sdp::check_feasibility(sol, kTol);
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.normalization_residual, 0);
  EXPECT_EQ(rep.max_triangle_violation, 0);
}

TEST(EmbedIntegralCut, HalfSizeGivesExpansion) {
  const auto G = generators::random_regular(10, 3, 5);
  const VertexSet S{0, 1, 4, 6, 9};
  EXPECT_NEAR(sdp::embed_integral_cut(G, S).objective, to_double(expansion(G, S)), 1e-12);
}

TEST(EmbedIntegralCut, K4SingleVertex) {
  EXPECT_NEAR(sdp::embed_integral_cut(generators::complete(4), {0}).objective, 2.0 / 3, 1e-12);
}

TEST(EmbedIntegralCut, RejectsLargeOrEmpty) {
  EXPECT_THROW(sdp::embed_integral_cut(generators::cycle(8), {}), std::invalid_argument);
  EXPECT_THROW(sdp::embed_integral_cut(generators::cycle(8), {0, 1, 2, 3, 4}), std::invalid_argument);
}

TEST(CheckFeasibility, GaussianVectorsFail) {
  auto rng = make_rng(1);
  std::normal_distribution<double> g;
  EmbeddingSolution sol;
  sol.vectors.resize(12, 6);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 6; ++j) sol.vectors(i, j) = g(rng);
  const auto rep = sdp::check_feasibility(sol, kTol);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.max_triangle_violation, 0);
}

TEST(CheckFeasibility, ObtuseTripleViolates) {
  // Collinear points 0, 1, 2: |0-2|^2 = 4 > 1 + 1.
  EmbeddingSolution sol;
  sol.vectors.resize(3, 1);
  sol.vectors << 0, 1, 2;
  const auto rep = sdp::check_feasibility(sol, kTol);
  EXPECT_NEAR(rep.max_triangle_violation, 2.0, 1e-12);
  EXPECT_FALSE(rep.pass);
}

TEST(SolveSa, SingleCenter) {
  const auto G = generators::cycle(8);
  const auto r = sdp::solve_sa_for_set(G, {0});
  ASSERT_EQ(r.sa.p.size(), 2u);
  EXPECT_NEAR(r.sa.p[0] + r.sa.p[1], 1.0, kTol);
  EXPECT_TRUE(sdp::check_sa_feasibility(r.solution, r.sa, kTol).pass);
  EXPECT_NEAR(r.solution.objective, sdp::solve_arv(G).objective, kObjTol);
}

TEST(SolveSa, TwoK4OneCenterPerComponent) {
  const auto G = two_k4();
  const auto r = sdp::solve_sa_for_set(G, {0, 4});
  EXPECT_NEAR(r.solution.objective, 0, kObjTol);
  // Mass sits on the patterns that split the two centers.
  EXPECT_NEAR(r.sa.p[0b01] + r.sa.p[0b10], 1.0, kTol);
}

TEST(SolveSa, C8AntipodalCenters) {
  const auto G = generators::cycle(8);
  const auto r = sdp::solve_sa_for_set(G, {0, 4});
  EXPECT_LE(r.solution.objective, 0.25 + kObjTol);
  EXPECT_TRUE(sdp::check_sa_feasibility(r.solution, r.sa, kTol).pass);
}

TEST(SolveSa, AtLeastArvObjective) {
  const auto G = generators::random_regular(12, 3, 7);
  const double arv = sdp::solve_arv(G).objective;
  const auto r = sdp::solve_sa_for_set(G, {0, 5, 9});
  EXPECT_GE(r.solution.objective, arv - kObjTol);
  EXPECT_LE(r.solution.objective, to_double(oracle::brute_phi(G).value) + kObjTol);
}

TEST(SolveSa, CenterLimits) {
  const auto G = generators::cycle(12);
  EXPECT_THROW(sdp::solve_sa_for_set(G, {}), std::invalid_argument);
  EXPECT_THROW(sdp::solve_sa_for_set(G, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}), std::invalid_argument);
  EXPECT_THROW(sdp::solve_sa_for_set(G, {1, 1}), std::invalid_argument);
}

TEST(IntegralSa, FeasibleWitness) {
  const auto G = generators::cycle(8);
  const VertexSet S{0, 1, 2, 3};
  const auto x = sdp::embed_integral_cut(G, S);
  const auto sa = sdp::integral_sa(x, S, {0, 4});
  EXPECT_TRUE(sdp::check_sa_feasibility(x, sa, kTol).pass);
}

TEST(SampleCutMetric, IntegralWitnessIsDeterministic) {
  const auto G = generators::cycle(8);
  const VertexSet S{0, 1, 2, 3};
  const auto x = sdp::embed_integral_cut(G, S);
  const auto sa = sdp::integral_sa(x, S, {0, 4});
  const auto d2 = squared_distances(x);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto D = sdp::sample_cut_metric(sa, seed);
    EXPECT_EQ(D.kind(), DistanceKind::sampled);
    for (int u = 0; u < 8; ++u)
      for (int v = 0; v < 8; ++v) EXPECT_NEAR(D(u, v), d2(u, v), 1e-12);
  }
}

TEST(SampleCutMetric, ConcentratedPatternIsExact) {
  sdp::SASolution sa;
  sa.R = {0};
  sa.p = {1.0, 0.0};
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2, 2);
  M(0, 1) = M(1, 0) = 4;
  sa.d = {DistanceMatrix(M, DistanceKind::sampled), DistanceMatrix::zeros(2, DistanceKind::sampled)};
  EXPECT_EQ(sdp::sample_cut_metric(sa, 3)(0, 1), 4.0);
  sa.p = {0.0, 0.0};
  EXPECT_THROW(sdp::sample_cut_metric(sa, 3), std::invalid_argument);
}

TEST(SampleCutMetric, MeanMatchesSquaredDistances) {
  const auto G = generators::cycle(8);
  const auto r = sdp::solve_sa_for_set(G, {0, 2, 5});
  const auto d2 = squared_distances(r.solution);
  const int N = 4000, n = 8;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(n, n);
  for (int t = 0; t < N; ++t) {
    const auto D = sdp::sample_cut_metric(r.sa, mix_seed(17, t));
    expect_sampled_metric_valid(r.sa, D);
    mean += D.values();
  }
  mean /= N;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double second = 0;  // E[D^2] = sum_b (d^b)^2 / p^b
      for (std::size_t b = 0; b < r.sa.p.size(); ++b)
        if (r.sa.p[b] > 0) second += r.sa.d[b](u, v) * r.sa.d[b](u, v) / r.sa.p[b];
      const double sd = std::sqrt(std::max(0.0, second - d2(u, v) * d2(u, v)) / N);
      EXPECT_NEAR(mean(u, v), d2(u, v), 5 * sd + 1e-9) << u << "," << v;
    }
}
