#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sparsecut/cli.hpp"
#include "sparsecut/generators.hpp"
#include "sparsecut/oracle.hpp"
#include "sparsecut/rounding.hpp"
#include "sparsecut/sdp.hpp"
#include "sparsecut/serialize.hpp"
#include "sparsecut/structure.hpp"

namespace py = pybind11;
using namespace sparsecut;
using io::Json;

namespace {

std::pair<std::int64_t, std::int64_t> frac(const Rational& q) { return {q.numerator(), q.denominator()}; }

EmbeddingSolution parse_solution(const std::string& text) { return io::solution_from_json(Json::parse(text)); }

cli::ExperimentConfig config_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  cli::ExperimentConfig c;
  c.command = j.value("command", "");
  c.graph = j.value("graph", "");
  c.mode = j.value("mode", c.mode);
  c.k = j.value("k", c.k);
  c.eps = j.value("eps", c.eps);
  c.delta = j.value("delta", c.delta);
  c.tol = j.value("tol", c.tol);
  c.kappa = j.value("kappa", c.kappa);
  c.trials = j.value("trials", c.trials);
  c.dim_retry_cap = j.value("dim_retry_cap", c.dim_retry_cap);
  c.partition_retry_cap = j.value("partition_retry_cap", c.partition_retry_cap);
  c.sa_retry_cap = j.value("sa_retry_cap", c.sa_retry_cap);
  c.padded = j.value("padded", c.padded);
  c.lipschitz = j.value("lipschitz", c.lipschitz);
  if (j.contains("seed") && !j["seed"].is_null()) c.seed = j["seed"].get<std::uint64_t>();
  c.spectrum_prefix = j.value("spectrum_prefix", c.spectrum_prefix);
  c.input_dir = j.value("input_dir", "");
  c.out = j.value("out", "");
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparsest cut relaxations, structure theorems and rounding";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
  py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
  py::register_exception<RandomnessFailure>(m, "RandomnessFailure", PyExc_RuntimeError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);
  py::register_exception<ExtractionFailure>(m, "ExtractionFailure", PyExc_RuntimeError);
  py::register_exception<SamplingFailure>(m, "SamplingFailure", PyExc_RuntimeError);
  py::register_exception<cli::StageError>(m, "StageError", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("n"), py::arg("edges"))
      .def_static("load", &Graph::load, py::arg("path"))
      .def_static("parse", [](const std::string& text) {
        std::istringstream in(text);
        return Graph::parse(in);
      })
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("degree", &Graph::degree)
      .def_property_readonly("edges", [](const Graph& G) {
        std::vector<std::pair<int, int>> out;
        for (const auto& e : G.edges()) out.emplace_back(e.u, e.v);
        return out;
      })
      .def("to_text", &Graph::to_text);

  m.def("cycle", &generators::cycle, py::arg("n"));
  m.def("complete", &generators::complete, py::arg("n"));
  m.def("disjoint_union", &generators::disjoint_union);
  m.def("random_regular", &generators::random_regular, py::arg("n"), py::arg("r"), py::arg("seed"));
  m.def("planted_clusters", &generators::planted_clusters, py::arg("clusters"), py::arg("size"),
        py::arg("swaps"), py::arg("seed"));

  m.def("expansion", [](const Graph& G, std::vector<int> S) { return frac(expansion(G, make_vertex_set(std::move(S), G.n()))); });
  m.def("laplacian_spectrum", [](const Graph& G) { return laplacian_spectrum(G).eigenvalues; });
  m.def("brute_phi", [](const Graph& G) {
    const auto r = oracle::brute_phi(G);
    return py::make_tuple(frac(r.value), r.witness.front());
  });
  m.def("brute_phi_k", [](const Graph& G, int k) {
    const auto r = oracle::brute_phi_k(G, k);
    return py::make_tuple(frac(r.value), r.witness);
  });

  m.def("solve_arv", [](const Graph& G, double tol) {
    sdp::SolverOptions o;
    o.tol = tol;
    return io::solution_to_json(sdp::solve_arv(G, o)).dump();
  }, py::arg("G"), py::arg("tol") = 1e-6);
  m.def("embed_integral_cut", [](const Graph& G, std::vector<int> S) {
    return io::solution_to_json(sdp::embed_integral_cut(G, make_vertex_set(std::move(S), G.n()))).dump();
  });
  m.def("check_feasibility", [](const std::string& sol, double tol) {
    const auto r = sdp::check_feasibility(parse_solution(sol), tol);
    return py::dict(py::arg("max_triangle_violation") = r.max_triangle_violation,
                    py::arg("normalization_residual") = r.normalization_residual,
                    py::arg("objective") = r.objective, py::arg("pass") = r.pass);
  }, py::arg("solution"), py::arg("tol") = 1e-6);

  m.def("cover_via_lambda", [](const Graph& G, const std::string& sol, int k, double eps, double delta, std::uint64_t seed) {
    return io::outcome_to_json(structure::cover_via_lambda(G, parse_solution(sol), k, eps, delta, seed)).dump();
  });
  m.def("cover_via_phi", [](const Graph& G, const std::string& sol, int k, double eps, double delta, std::uint64_t seed) {
    return io::outcome_to_json(structure::cover_via_phi(G, parse_solution(sol), k, eps, delta, seed)).dump();
  });
  m.def("verify_outcome", [](const Graph& G, const std::string& sol, const std::string& outcome, int k, double eps,
                             double delta) {
    return structure::verify_outcome(G, parse_solution(sol), io::outcome_from_json(Json::parse(outcome)), k, eps, delta);
  });
  m.def("round_arv", [](const Graph& G, const std::string& sol, const std::string& cover, std::uint64_t seed) {
    return io::rounded_cut_to_json(rounding::round_arv(G, parse_solution(sol), io::cover_from_json(Json::parse(cover)), seed)).dump();
  });

  m.def("run", [](const std::string& config) {
    const auto c = config_from_json(config);
    if (c.command == "diagnose") return cli::dump_report(cli::cmd_diagnose(c));
    if (c.command == "pipeline") return cli::dump_report(cli::cmd_pipeline(c));
    if (c.command == "emit-plotdata") return cli::cmd_emit_plotdata(c);
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }, py::arg("config_json"));
}
