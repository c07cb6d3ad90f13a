#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sparsecut/errors.hpp"
#include "sparsecut/generators.hpp"
#include "sparsecut/graph.hpp"

using namespace sparsecut;

namespace {

Eigen::VectorXd indicator(const VertexSet& S, int n) {
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  for (int v : S) f[v] = 1;
  return f;
}

Graph two_k4() { return generators::disjoint_union(generators::complete(4), generators::complete(4)); }

}  // namespace

TEST(Expansion, SingleVertexOfK4) { EXPECT_EQ(expansion(generators::complete(4), {0}), Rational(1)); }

TEST(Expansion, ArcOfThreeInC6) { EXPECT_EQ(expansion(generators::cycle(6), {0, 1, 2}), Rational(1, 3)); }

TEST(Expansion, ComponentOfTwoK4) { EXPECT_EQ(expansion(two_k4(), {0, 1, 2, 3}), Rational(0)); }

TEST(Expansion, RejectsEmptyAndFull) {
  const auto G = generators::cycle(6);
  EXPECT_THROW(expansion(G, {}), std::invalid_argument);
  EXPECT_THROW(expansion(G, {0, 1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST(Expansion, ComplementSharesCutEdges) {
  const auto G = generators::random_regular(12, 3, 4);
  for (const VertexSet& S : {VertexSet{0}, VertexSet{0, 3, 5}, VertexSet{1, 2, 7, 8, 11}}) {
    const auto Sc = complement(S, 12);
    EXPECT_EQ(cut_edges(G, S), cut_edges(G, Sc));
    EXPECT_EQ(expansion(G, S) * Rational(static_cast<long>(S.size())),
              expansion(G, Sc) * Rational(static_cast<long>(Sc.size())));
  }
}

TEST(Expansion, MakeCutReportsSmallerSide) {
  const auto G = generators::cycle(8);
  const auto c = make_cut(G, {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(c.S, (VertexSet{6, 7}));
  EXPECT_EQ(c.cut_edges, 2);
  EXPECT_EQ(c.expansion, Rational(1, 2));
}

TEST(Spectrum, CompleteGraphClosedForm) {
  const auto s = laplacian_spectrum(generators::complete(4));
  ASSERT_EQ(s.eigenvalues.size(), 4u);
  EXPECT_NEAR(s.eigenvalues[0], 0, 1e-9);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(s.eigenvalues[i], 4.0 / 3, 1e-9);
}

TEST(Spectrum, CycleClosedForm) {
  const auto s = laplacian_spectrum(generators::cycle(8));
  std::vector<double> want;
  for (int j = 0; j < 8; ++j) want.push_back(1 - std::cos(2 * std::numbers::pi * j / 8));
  std::sort(want.begin(), want.end());
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(s.eigenvalues[i], want[i], 1e-9);
}

TEST(Spectrum, ConnectedGraphHasZeroFirstEigenvalueAndTraceN) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto G = generators::random_regular(14, 3, seed);
    const auto s = laplacian_spectrum(G);
    EXPECT_NEAR(s.eigenvalues.front(), 0, 1e-9);
    double tr = 0;
    for (double x : s.eigenvalues) {
      tr += x;
      EXPECT_GE(x, -1e-9);
      EXPECT_LE(x, 2 + 1e-9);
    }
    EXPECT_NEAR(tr, 14, 1e-9);
    EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
}

TEST(Spectrum, EigenvectorsOnRequest) {
  const auto s = laplacian_spectrum(generators::cycle(6), true);
  ASSERT_TRUE(s.eigenvectors.has_value());
  EXPECT_EQ(s.eigenvectors->rows(), 6);
}

TEST(Rayleigh, ConstantIsZero) { EXPECT_NEAR(rayleigh(generators::cycle(8), Eigen::VectorXd::Ones(8)), 0, 1e-15); }

TEST(Rayleigh, IndicatorGivesExpansion) {
  const auto G = generators::random_regular(10, 3, 2);
  const VertexSet S{0, 2, 4, 5};
  EXPECT_NEAR(rayleigh(G, indicator(S, 10)), to_double(expansion(G, S)), 1e-12);
}

TEST(Rayleigh, C4Alternating) {
  Eigen::VectorXd f(4);
  f << 1, 0, -1, 0;
  EXPECT_NEAR(rayleigh(generators::cycle(4), f), 1.0, 1e-12);
}

TEST(Rayleigh, ZeroFunctionRejected) {
  EXPECT_THROW(rayleigh(generators::cycle(4), Eigen::VectorXd::Zero(4)), std::invalid_argument);
}

TEST(FactLambda, K4Basis) {
  const auto G = generators::complete(4);
  const auto rep = check_fact_lambda(G, {indicator({0}, 4), indicator({1}, 4)});
  EXPECT_NEAR(rep.lambda_k, 4.0 / 3, 1e-9);
  EXPECT_NEAR(rep.bound, 2.0, 1e-12);
  EXPECT_TRUE(rep.holds);
}

TEST(FactLambda, C8AntipodalArcs) {
  const auto rep = check_fact_lambda(generators::cycle(8), {indicator({0, 1}, 8), indicator({4, 5}, 8)});
  EXPECT_NEAR(rep.bound, 2 * 0.5, 1e-12);
  EXPECT_TRUE(rep.holds);
}

TEST(FactLambda, ConstantOnComponent) {
  const auto rep = check_fact_lambda(generators::cycle(6), {Eigen::VectorXd::Ones(6)});
  EXPECT_NEAR(rep.lambda_k, 0, 1e-9);
  EXPECT_TRUE(rep.holds);
}

TEST(FactLambda, OverlappingSupportsRejected) {
  EXPECT_THROW(check_fact_lambda(generators::cycle(6), {indicator({0, 1}, 6), indicator({1, 2}, 6)}),
               std::invalid_argument);
}

TEST(GraphFormat, RoundTrip) {
  const auto G = generators::random_regular(10, 3, 9);
  std::istringstream in(G.to_text());
  const auto H = Graph::parse(in);
  EXPECT_EQ(H.n(), 10);
  EXPECT_EQ(H.edges(), G.edges());
}

TEST(GraphFormat, MalformedHeaderReportsLineOne) {
  std::istringstream in("4 3\n0 1\n");
  try {
    Graph::parse(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
  }
}

TEST(GraphFormat, BadEdgeReportsItsLine) {
  std::istringstream in("4 2 4\n0 1\n1 2\n2 x\n3 0\n");
  try {
    Graph::parse(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(GraphFormat, NonRegularNamesVertex) {
  std::istringstream in("4 2 4\n0 1\n0 2\n0 3\n1 2\n");
  try {
    Graph::parse(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 0"), std::string::npos) << e.what();
  }
}

TEST(GraphFormat, SimpleGraphEnforced) {
  EXPECT_THROW(Graph(3, {{0, 0}, {1, 2}}), std::invalid_argument);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(Graph(1, {}), std::invalid_argument);
}
