#pragma once

#include <cstdint>

#include "sparsecut/graph.hpp"

namespace sparsecut::generators {

Graph cycle(int n);
Graph complete(int n);
Graph disjoint_union(const Graph& a, const Graph& b);

/// Random simple r-regular graph via the pairing model with restarts.
Graph random_regular(int n, int r, std::uint64_t seed);

/// `clusters` disjoint copies of K_{size}, then `swaps` degree-preserving
/// edge switches between consecutive clusters (each adds two crossing edges).
Graph planted_clusters(int clusters, int size, int swaps, std::uint64_t seed);

/// Same construction with random r-regular clusters instead of cliques.
Graph planted_regular_clusters(int clusters, int size, int r, int swaps,
                               std::uint64_t seed);

}  // namespace sparsecut::generators
