#include "sparsecut/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "sparsecut/random.hpp"

namespace sparsecut::generators {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList edge_list(const Graph& g, int offset = 0) {
  EdgeList out;
  for (const auto& e : g.edges()) out.emplace_back(e.u + offset, e.v + offset);
  return out;
}

// Degree-preserving switches between the cluster blocks [i*size, (i+1)*size).
Graph switch_between_clusters(int clusters, int size, EdgeList edges,
                              int swaps, std::uint64_t seed) {
  const int n = clusters * size;
  if (clusters < 2 || swaps == 0) return Graph(n, std::move(edges));
  auto rng = make_rng(seed, 17);
  std::set<std::pair<int, int>> present;
  for (auto [a, b] : edges) present.insert({std::min(a, b), std::max(a, b)});
  auto cluster_of = [size](int v) { return v / size; };

  const int pairs = clusters == 2 ? 1 : clusters;
  for (int s = 0; s < swaps; ++s) {
    const int ci = s % pairs;
    const int cj = (ci + 1) % clusters;
    bool done = false;
    for (int attempt = 0; attempt < 10000 && !done; ++attempt) {
      std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
      const std::size_t x = pick(rng), y = pick(rng);
      auto [a, b] = edges[x];
      auto [c, e] = edges[y];
      if (cluster_of(a) != ci || cluster_of(b) != ci) continue;
      if (cluster_of(c) != cj || cluster_of(e) != cj) continue;
      const std::pair<int, int> n1{std::min(a, c), std::max(a, c)};
      const std::pair<int, int> n2{std::min(b, e), std::max(b, e)};
      if (present.count(n1) || present.count(n2)) continue;
      present.erase({std::min(a, b), std::max(a, b)});
      present.erase({std::min(c, e), std::max(c, e)});
      present.insert(n1);
      present.insert(n2);
      edges[x] = n1;
      edges[y] = n2;
      done = true;
    }
    if (!done) throw std::invalid_argument("planted clusters: could not place switch");
  }
  return Graph(n, std::move(edges));
}

}  // namespace

Graph cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  EdgeList edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph complete(int n) {
  EdgeList edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  if (a.degree() != b.degree())
    throw std::invalid_argument("disjoint_union: degrees differ");
  EdgeList edges = edge_list(a);
  auto more = edge_list(b, a.n());
  edges.insert(edges.end(), more.begin(), more.end());
  return Graph(a.n() + b.n(), std::move(edges));
}

Graph random_regular(int n, int r, std::uint64_t seed) {
  if (r < 1 || r >= n || (n * r) % 2 != 0)
    throw std::invalid_argument("random_regular: invalid (n, r)");
  auto rng = make_rng(seed, 3);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> stubs;
    for (int v = 0; v < n; ++v)
      for (int j = 0; j < r; ++j) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<int, int>> seen;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      int a = stubs[i], b = stubs[i + 1];
      if (a == b || !seen.insert({std::min(a, b), std::max(a, b)}).second) {
        ok = false;
        break;
      }
    }
    if (ok) return Graph(n, EdgeList(seen.begin(), seen.end()));
  }
  throw std::invalid_argument("random_regular: pairing model did not produce a simple graph");
}

Graph planted_clusters(int clusters, int size, int swaps, std::uint64_t seed) {
  const Graph block = complete(size);
  EdgeList edges;
  for (int c = 0; c < clusters; ++c) {
    auto part = edge_list(block, c * size);
    edges.insert(edges.end(), part.begin(), part.end());
  }
  return switch_between_clusters(clusters, size, std::move(edges), swaps, seed);
}

Graph planted_regular_clusters(int clusters, int size, int r, int swaps,
                               std::uint64_t seed) {
  EdgeList edges;
  for (int c = 0; c < clusters; ++c) {
    auto part = edge_list(random_regular(size, r, mix_seed(seed, 100 + c)), c * size);
    edges.insert(edges.end(), part.begin(), part.end());
  }
  return switch_between_clusters(clusters, size, std::move(edges), swaps, seed);
}

}  // namespace sparsecut::generators
