#include "sparsecut/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sparsecut/errors.hpp"

namespace sparsecut {

namespace {

std::string vertex_degree_message(int v, int got, int want) {
  std::ostringstream os;
  os << "graph is not regular: vertex " << v << " has degree " << got
     << ", expected " << want;
  return os.str();
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  edges_.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge endpoint out of range: " +
                                  std::to_string(a) + " " + std::to_string(b));
    if (a == b)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
    edges_.push_back({std::min(a, b), std::max(a, b)});
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto it = std::adjacent_find(edges_.begin(), edges_.end());
      it != edges_.end())
    throw std::invalid_argument("parallel edge " + std::to_string(it->u) + " " +
                                std::to_string(it->v));

  adj_.assign(n, {});
  for (const auto& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  r_ = static_cast<int>(adj_[0].size());
  if (r_ == 0) throw std::invalid_argument("graph has degree 0");
  for (int v = 1; v < n; ++v) {
    if (static_cast<int>(adj_[v].size()) != r_)
      throw std::invalid_argument(
          vertex_degree_message(v, static_cast<int>(adj_[v].size()), r_));
  }

  if (n <= 64) {
    masks_.assign(n, 0);
    for (int v = 0; v < n; ++v)
      for (int w : adj_[v]) masks_[v] |= std::uint64_t{1} << w;
  }
}

bool Graph::adjacent(int u, int v) const {
  const auto& nb = adj_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::parse(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      ++line_no;
      auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header)) throw ParseError(1, "missing header");
  const int header_line = line_no;
  std::istringstream hs(header);
  long long n = 0, r = 0, m = 0;
  std::string extra;
  if (!(hs >> n >> r >> m) || (hs >> extra))
    throw ParseError(header_line, "expected header \"n r m\"");
  if (n < 2 || r < 1 || m < 0)
    throw ParseError(header_line, "header values out of range");
  if (n * r != 2 * m)
    throw ParseError(header_line, "header inconsistent: n*r != 2m");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (long long i = 0; i < m; ++i) {
    std::string row;
    if (!next_content_line(row))
      throw ParseError(line_no + 1, "expected " + std::to_string(m) +
                                        " edges, got " + std::to_string(i));
    std::istringstream rs(row);
    long long a = -1, b = -1;
    if (!(rs >> a >> b) || (rs >> extra))
      throw ParseError(line_no, "expected edge \"u v\"");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw ParseError(line_no, "vertex id out of range");
    if (a == b) throw ParseError(line_no, "self-loop");
    ++deg[a];
    ++deg[b];
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  std::string trailing;
  if (next_content_line(trailing))
    throw ParseError(line_no, "unexpected content after edge list");
  for (int v = 0; v < n; ++v)
    if (deg[v] != r)
      throw ParseError(header_line, vertex_degree_message(v, deg[v], static_cast<int>(r)));

  try {
    return Graph(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(header_line, e.what());
  }
}

Graph Graph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return parse(in);
}

std::string Graph::to_text() const {
  std::ostringstream os;
  os << n_ << ' ' << r_ << ' ' << edges_.size() << '\n';
  for (const auto& e : edges_) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

VertexSet make_vertex_set(std::vector<int> ids, int n) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && (ids.front() < 0 || ids.back() >= n))
    throw std::invalid_argument("vertex id out of range");
  return ids;
}

VertexSet complement(const VertexSet& S, int n) {
  VertexSet out;
  out.reserve(n - S.size());
  std::size_t j = 0;
  for (int v = 0; v < n; ++v) {
    if (j < S.size() && S[j] == v) {
      ++j;
      continue;
    }
    out.push_back(v);
  }
  return out;
}

int cut_edges(const Graph& G, const VertexSet& S) {
  std::vector<char> in(G.n(), 0);
  for (int v : S) in.at(v) = 1;
  int count = 0;
  for (const auto& e : G.edges()) count += in[e.u] != in[e.v];
  return count;
}

Rational expansion(const Graph& G, const VertexSet& S) {
  if (S.empty()) throw std::invalid_argument("expansion of empty set");
  if (static_cast<int>(S.size()) >= G.n())
    throw std::invalid_argument("expansion of the full vertex set");
  return Rational(cut_edges(G, S),
                  static_cast<std::int64_t>(G.degree()) * static_cast<std::int64_t>(S.size()));
}

Cut make_cut(const Graph& G, const VertexSet& S) {
  VertexSet side = S;
  if (2 * static_cast<int>(side.size()) > G.n()) side = complement(S, G.n());
  Cut c;
  c.cut_edges = cut_edges(G, side);
  c.expansion = expansion(G, side);
  c.S = std::move(side);
  return c;
}

Spectrum laplacian_spectrum(const Graph& G, bool with_vectors, int max_n) {
  if (G.n() > max_n)
    throw ResourceLimit("spectrum: n=" + std::to_string(G.n()) +
                        " exceeds cap " + std::to_string(max_n));
  const int n = G.n();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(n, n);
  const double inv_r = 1.0 / G.degree();
  for (const auto& e : G.edges()) {
    L(e.u, e.v) -= inv_r;
    L(e.v, e.u) -= inv_r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      L, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw SolverFailure("dense eigensolver failed to converge");
  Spectrum s;
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  if (with_vectors) s.eigenvectors = es.eigenvectors();
  return s;
}

double rayleigh(const Graph& G, const Eigen::VectorXd& f) {
  if (f.size() != G.n()) throw std::invalid_argument("rayleigh: size mismatch");
  const double denom = G.degree() * f.squaredNorm();
  if (denom == 0.0) throw std::invalid_argument("rayleigh: zero function");
  double num = 0;
  for (const auto& e : G.edges()) {
    const double diff = f[e.u] - f[e.v];
    num += diff * diff;
  }
  return num / denom;
}

FactLambdaReport check_fact_lambda(const Graph& G,
                                   const std::vector<Eigen::VectorXd>& fs,
                                   double tol) {
  if (fs.empty()) throw std::invalid_argument("check_fact_lambda: no functions");
  std::vector<int> owner(G.n(), -1);
  FactLambdaReport rep;
  rep.k = static_cast<int>(fs.size());
  for (int i = 0; i < rep.k; ++i) {
    if (fs[i].size() != G.n())
      throw std::invalid_argument("check_fact_lambda: size mismatch");
    for (int v = 0; v < G.n(); ++v) {
      if (fs[i][v] == 0.0) continue;
      if (owner[v] != -1)
        throw std::invalid_argument("functions " + std::to_string(owner[v]) +
                                    " and " + std::to_string(i) +
                                    " share support vertex " + std::to_string(v));
      owner[v] = i;
    }
    rep.quotients.push_back(rayleigh(G, fs[i]));
  }
  const auto sp = laplacian_spectrum(G);
  rep.lambda_k = sp.eigenvalues.at(rep.k - 1);
  rep.bound = 2.0 * *std::max_element(rep.quotients.begin(), rep.quotients.end());
  rep.holds = rep.lambda_k <= rep.bound + tol;
  return rep;
}

double to_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

}  // namespace sparsecut
