#include "sparsecut/serialize.hpp"

#include <stdexcept>

namespace sparsecut::io {

namespace {

Json matrix_rows(const Eigen::MatrixXd& M) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_rows(const Json& rows, Eigen::Index cols) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(cols)) throw std::invalid_argument("json: ragged matrix");
    for (Eigen::Index j = 0; j < cols; ++j) M(static_cast<Eigen::Index>(i), j) = rows[i][j].get<double>();
  }
  return M;
}

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const Json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return v;
}

std::vector<VertexSet> sets_from_json(const Json& a) {
  std::vector<VertexSet> out;
  for (const auto& s : a) out.push_back(s.get<VertexSet>());
  return out;
}

}  // namespace

Json rational_to_json(const Rational& q) {
  return Json{{"num", q.numerator()}, {"den", q.denominator()}, {"value", to_double(q)}};
}

Rational rational_from_json(const Json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

Json solution_to_json(const EmbeddingSolution& sol) {
  return Json{{"n", sol.n()},
              {"m", sol.dim()},
              {"vectors", matrix_rows(sol.vectors)},
              {"objective", sol.objective},
              {"kind", to_string(sol.kind)},
              {"tolerances", {{"feasibility", sol.tolerance}}}};
}

EmbeddingSolution solution_from_json(const Json& j) {
  EmbeddingSolution sol;
  const int n = j.at("n").get<int>(), m = j.at("m").get<int>();
  sol.vectors = matrix_from_rows(j.at("vectors"), m);
  if (sol.n() != n) throw std::invalid_argument("json: vector count does not match n");
  sol.objective = j.at("objective").get<double>();
  sol.kind = embedding_kind_from_string(j.at("kind").get<std::string>());
  sol.tolerance = j.at("tolerances").at("feasibility").get<double>();
  return sol;
}

Json sa_to_json(const sdp::SASolution& sa) {
  Json patterns = Json::array();
  for (std::size_t b = 0; b < sa.p.size(); ++b) {
    std::string bits(sa.R.size(), '0');
    for (std::size_t i = 0; i < sa.R.size(); ++i)
      if (b >> i & 1u) bits[i] = '1';
    patterns.push_back(Json{{"b", bits}, {"p", sa.p[b]}, {"d", matrix_rows(sa.d[b].values())}});
  }
  return Json{{"n", sa.n()}, {"R", sa.R}, {"patterns", patterns}};
}

sdp::SASolution sa_from_json(const Json& j) {
  sdp::SASolution sa;
  sa.R = j.at("R").get<std::vector<int>>();
  const int n = j.at("n").get<int>();
  const std::size_t count = std::size_t{1} << sa.R.size();
  sa.p.assign(count, 0.0);
  sa.d.assign(count, DistanceMatrix::zeros(n, DistanceKind::sampled));
  for (const auto& pat : j.at("patterns")) {
    const auto bits = pat.at("b").get<std::string>();
    if (bits.size() != sa.R.size()) throw std::invalid_argument("json: pattern length does not match R");
    std::size_t b = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') b |= std::size_t{1} << i;
      else if (bits[i] != '0') throw std::invalid_argument("json: pattern must be a bitstring");
    }
    sa.p[b] = pat.at("p").get<double>();
    sa.d[b] = DistanceMatrix(matrix_from_rows(pat.at("d"), n), DistanceKind::sampled);
  }
  return sa;
}

Json distance_to_json(const DistanceMatrix& d) {
  return Json{{"n", d.n()}, {"kind", to_string(d.kind())}, {"values", matrix_rows(d.values())}};
}

DistanceMatrix distance_from_json(const Json& j) {
  return DistanceMatrix(matrix_from_rows(j.at("values"), j.at("n").get<int>()),
                        distance_kind_from_string(j.at("kind").get<std::string>()));
}

Json partition_to_json(const Partition& p) {
  return Json{{"scheme", p.scheme}, {"seed", p.seed}, {"delta", p.delta}, {"parameter", p.parameter},
              {"blocks", p.blocks}};
}

Partition partition_from_json(const Json& j) {
  Partition p;
  p.scheme = j.at("scheme").get<std::string>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.delta = j.at("delta").get<double>();
  p.parameter = j.value("parameter", 0.0);
  p.blocks = sets_from_json(j.at("blocks"));
  return p;
}

Json cover_to_json(const Cover& c) {
  return Json{{"metric", c.metric}, {"sets", c.sets}, {"diameters", c.diameters}, {"covered_count", c.covered_count}};
}

Cover cover_from_json(const Json& j) {
  Cover c;
  c.metric = j.at("metric").get<std::string>();
  c.sets = sets_from_json(j.at("sets"));
  c.diameters = j.at("diameters").get<std::vector<double>>();
  c.covered_count = j.at("covered_count").get<int>();
  return c;
}

Json certificate_to_json(const Certificate& c) {
  Json j{{"variant", c.variant == Certificate::Variant::spectral ? "spectral" : "expansion"}, {"k", c.k()}};
  Json fs = Json::array();
  for (const auto& f : c.functions) fs.push_back(vector_json(f));
  j["functions"] = fs;
  j["rayleigh_quotients"] = c.rayleigh_quotients;
  j["sets"] = c.sets;
  Json ex = Json::array();
  for (const auto& q : c.expansions) ex.push_back(rational_to_json(q));
  j["expansions"] = ex;
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const auto v = j.at("variant").get<std::string>();
  if (v == "spectral") c.variant = Certificate::Variant::spectral;
  else if (v == "expansion") c.variant = Certificate::Variant::expansion;
  else throw std::invalid_argument("json: unknown certificate variant " + v);
  for (const auto& f : j.at("functions")) c.functions.push_back(vector_from_json(f));
  c.rayleigh_quotients = j.at("rayleigh_quotients").get<std::vector<double>>();
  c.sets = sets_from_json(j.at("sets"));
  for (const auto& q : j.at("expansions")) c.expansions.push_back(rational_from_json(q));
  return c;
}

Json cut_to_json(const Cut& c) {
  return Json{{"S", c.S}, {"expansion", rational_to_json(c.expansion)}, {"cut_edges", c.cut_edges}};
}

Cut cut_from_json(const Json& j) {
  return Cut{j.at("S").get<VertexSet>(), rational_from_json(j.at("expansion")), j.at("cut_edges").get<int>()};
}

Json rounded_cut_to_json(const rounding::RoundedCut& c) {
  Json j = cut_to_json(c.cut);
  j["method"] = c.method;
  j["seed"] = c.seed;
  j["trace"] = c.trace;
  return j;
}

Json outcome_to_json(const structure::StructureOutcome& o) {
  Json j{{"branch", o.is_cover() ? "cover" : "certificate"}};
  if (o.cover) j["cover"] = cover_to_json(*o.cover);
  if (o.certificate) j["certificate"] = certificate_to_json(*o.certificate);
  j["trace"] = o.trace;
  return j;
}

structure::StructureOutcome outcome_from_json(const Json& j) {
  structure::StructureOutcome o;
  if (j.contains("cover")) o.cover = cover_from_json(j.at("cover"));
  if (j.contains("certificate")) o.certificate = certificate_from_json(j.at("certificate"));
  if (o.cover.has_value() == o.certificate.has_value())
    throw std::invalid_argument("json: outcome must hold exactly one branch");
  o.trace = j.value("trace", Json::object());
  return o;
}

}  // namespace sparsecut::io
