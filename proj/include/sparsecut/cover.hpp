#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsecut/graph.hpp"

namespace sparsecut {

/// Disjoint blocks covering V, each of diameter <= delta under the
/// partition's metric. `parameter` is the padding alpha or Lipschitz L-hat.
struct Partition {
  std::vector<VertexSet> blocks;
  double delta = 0;
  std::string scheme;
  std::uint64_t seed = 0;
  double parameter = 0;
};

struct Cover {
  std::vector<VertexSet> sets;
  std::vector<double> diameters;
  std::string metric;  // name of the metric the diameters refer to
  int covered_count = 0;
};

/// Either k disjointly supported functions (spectral) or k disjoint sets
/// (expansion).
struct Certificate {
  enum class Variant { spectral, expansion };
  Variant variant = Variant::spectral;
  std::vector<Eigen::VectorXd> functions;
  std::vector<double> rayleigh_quotients;
  std::vector<VertexSet> sets;
  std::vector<Rational> expansions;

  int k() const {
    return static_cast<int>(variant == Variant::spectral ? functions.size() : sets.size());
  }
};

int union_size(const std::vector<VertexSet>& sets, int n);

}  // namespace sparsecut
