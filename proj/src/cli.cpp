#include "sparsecut/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sparsecut/metric.hpp"
#include "sparsecut/oracle.hpp"
#include "sparsecut/partition.hpp"
#include "sparsecut/random.hpp"
#include "sparsecut/rounding.hpp"
#include "sparsecut/sdp.hpp"
#include "sparsecut/structure.hpp"

namespace sparsecut::cli {

namespace fs = std::filesystem;

namespace {

bool log_enabled() {
  static const bool on = [] {
    const char* v = std::getenv("SPARSECUT_LOG");
    return v && (std::string(v) == "info" || std::string(v) == "debug");
  }();
  return on;
}

void log(const std::string& msg) {
  if (log_enabled()) std::cerr << "[sparsecut] " << msg << "\n";
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse-error";
  if (dynamic_cast<const ResourceLimit*>(&e)) return "resource-limit";
  if (dynamic_cast<const SolverFailure*>(&e)) return "solver-failure";
  if (dynamic_cast<const RandomnessFailure*>(&e)) return "randomness-failure";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "degenerate-input";
  if (dynamic_cast<const ExtractionFailure*>(&e)) return "extraction-failure";
  if (dynamic_cast<const SamplingFailure*>(&e)) return "sampling-failure";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
  return "error";
}

template <class F>
auto stage(const std::string& name, F&& f) {
  log("stage " + name);
  try {
    return f();
  } catch (const std::exception& e) {
    throw StageError(name, error_kind(e), e.what());
  }
}

Json graph_json(const Graph& G, const std::string& path) {
  return Json{{"path", path}, {"n", G.n()}, {"r", G.degree()}, {"m", G.edge_count()}};
}

Json oracle_json(const oracle::OracleResult& r) {
  return Json{{"value", io::rational_to_json(r.value)}, {"witness", r.witness}, {"enumerated", r.enumerated_count}};
}

Json bound_check_json(const structure::BoundCheck& bc) {
  Json j{{"variant", bc.variant}, {"k", bc.k}, {"max_value", bc.max_value}, {"lambda_k", bc.lambda_k}};
  j["phi_k"] = bc.phi_k ? Json(*bc.phi_k) : Json(nullptr);
  j["holds"] = bc.holds;
  return j;
}

Json ratio(double num, std::optional<double> den) {
  if (!den || *den <= 0) return nullptr;
  return num / *den;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (cfg.command != "diagnose" && cfg.command != "pipeline" && cfg.command != "emit-plotdata")
    fail("unknown command '" + cfg.command + "'");
  if (cfg.command == "emit-plotdata") {
    if (cfg.input_dir.empty()) fail("emit-plotdata needs an input directory");
    return;
  }
  if (cfg.graph.empty()) fail("--graph is required");
  if (cfg.spectrum_prefix < 0) fail("spectrum prefix must be nonnegative");
  if (cfg.command == "diagnose") return;
  if (cfg.mode != "lambda" && cfg.mode != "phi" && cfg.mode != "sa") fail("--mode must be lambda, phi or sa");
  if (!cfg.seed) fail("--seed is required for pipeline");
  if (cfg.k < 1) fail("--k must be at least 1");
  if (cfg.mode == "sa" && cfg.k > 5) fail("--k must be at most 5 in sa mode (at most 10 centers)");
  if (!(cfg.eps > 0 && cfg.eps < 1)) fail("--eps must lie in (0, 1)");
  if (!(cfg.delta > 0 && cfg.delta < 1)) fail("--delta must lie in (0, 1)");
  if (!(cfg.tol > 0 && cfg.tol < 1)) fail("--tol must lie in (0, 1)");
  if (!(cfg.kappa > 0)) fail("--kappa must be positive");
  if (cfg.trials < 1) fail("--trials must be at least 1");
  if (cfg.dim_retry_cap < 1 || cfg.partition_retry_cap < 1 || cfg.sa_retry_cap < 1)
    fail("retry caps must be at least 1");
  partition::padded_scheme_from_string(cfg.padded);
  partition::lipschitz_scheme_from_string(cfg.lipschitz);
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j{{"command", cfg.command}};
  if (cfg.command == "emit-plotdata") {
    j["input_dir"] = cfg.input_dir;
    return j;
  }
  j["graph"] = cfg.graph;
  j["spectrum_prefix"] = cfg.spectrum_prefix;
  if (cfg.command == "diagnose") return j;
  j["mode"] = cfg.mode;
  j["k"] = cfg.k;
  j["eps"] = cfg.eps;
  j["delta"] = cfg.delta;
  j["tol"] = cfg.tol;
  j["kappa"] = cfg.kappa;
  j["trials"] = cfg.trials;
  j["retry_caps"] = {{"dimension", cfg.dim_retry_cap}, {"partition", cfg.partition_retry_cap}, {"sa", cfg.sa_retry_cap}};
  j["padded"] = cfg.padded;
  j["lipschitz"] = cfg.lipschitz;
  j["seed"] = cfg.seed ? Json(*cfg.seed) : Json(nullptr);
  return j;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json cmd_diagnose(const ExperimentConfig& cfg) {
  validate(cfg);
  const Graph G = Graph::load(cfg.graph);
  Json rep{{"schema", kSchemaVersion}, {"command", "diagnose"}, {"config", config_to_json(cfg)}};
  rep["graph"] = graph_json(G, cfg.graph);

  Json spectrum{{"prefix", Json::array()}};
  if (G.n() <= kSpectrumCap) {
    const auto s = laplacian_spectrum(G);
    const int take = std::min<int>(cfg.spectrum_prefix, static_cast<int>(s.eigenvalues.size()));
    for (int i = 0; i < take; ++i) spectrum["prefix"].push_back(s.eigenvalues[i]);
    spectrum["lambda_2"] = s.eigenvalues.size() > 1 ? Json(s.eigenvalues[1]) : Json(nullptr);
    double tr = 0;
    for (double x : s.eigenvalues) tr += x;
    spectrum["trace"] = tr;
    spectrum["available"] = true;
  } else {
    spectrum["available"] = false;
  }
  rep["spectrum"] = spectrum;

  Json orc{{"phi", nullptr}, {"phi_k", Json::array()}, {"sse", nullptr}};
  if (G.n() <= oracle::kPhiCap) {
    orc["phi"] = oracle_json(oracle::brute_phi(G));
    const int s = std::max(1, G.n() / 4);
    Json sse = oracle_json(oracle::brute_sse(G, s));
    sse["s"] = s;
    orc["sse"] = sse;
  }
  for (int k = 2; k <= 4; ++k)
    if (oracle::phi_k_within_cap(G.n(), k)) {
      Json e = oracle_json(oracle::brute_phi_k(G, k));
      e["k"] = k;
      orc["phi_k"].push_back(e);
    }
  rep["oracle"] = orc;
  return rep;
}

Json cmd_pipeline(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::uint64_t seed = *cfg.seed;
  const Graph G = stage("load", [&] { return Graph::load(cfg.graph); });
  Json rep{{"schema", kSchemaVersion}, {"command", "pipeline"}, {"config", config_to_json(cfg)}};
  rep["graph"] = graph_json(G, cfg.graph);

  sdp::SolverOptions sopts;
  sopts.tol = cfg.tol;
  sdp::SolveInfo info;
  const auto sol = stage("sdp", [&] { return sdp::solve_arv(G, sopts, &info); });
  const auto feas = sdp::check_feasibility(sol, cfg.tol);
  rep["sdp"] = {{"objective", sol.objective},
                {"dimension", sol.dim()},
                {"iterations", info.iterations},
                {"gap_bound", info.gap_bound},
                {"variables", info.variables},
                {"inequalities", info.inequalities},
                {"feasibility",
                 {{"max_triangle_violation", feas.max_triangle_violation},
                  {"normalization_residual", feas.normalization_residual},
                  {"pass", feas.pass}}}};

  structure::StructureOptions st;
  st.dim_retry_cap = cfg.dim_retry_cap;
  st.partition_retry_cap = cfg.partition_retry_cap;
  st.padded = partition::padded_scheme_from_string(cfg.padded);
  st.lipschitz = partition::lipschitz_scheme_from_string(cfg.lipschitz);
  st.feasibility_tol = cfg.tol;
  const bool use_phi = cfg.mode == "phi";
  const auto outcome = stage("structure", [&] {
    auto run = [&](std::uint64_t s) {
      return use_phi ? structure::cover_via_phi(G, sol, cfg.k, cfg.eps, cfg.delta, s, st)
                     : structure::cover_via_lambda(G, sol, cfg.k, cfg.eps, cfg.delta, s, st);
    };
    return cfg.trials == 1 ? run(mix_seed(seed, 1)) : structure::best_of(run, cfg.trials, mix_seed(seed, 1));
  });
  Json sj = io::outcome_to_json(outcome);
  sj["theorem"] = use_phi ? "phi" : "lambda";
  sj["verified"] = stage("verify", [&] {
    return structure::verify_outcome(G, sol, outcome, cfg.k, cfg.eps, cfg.delta, 1e-9);
  });
  rep["structure"] = sj;
  rep["certificate_check"] = outcome.certificate
                                 ? bound_check_json(structure::certificate_bound_check(G, outcome, cfg.k))
                                 : Json(nullptr);

  std::optional<double> phi;
  if (G.n() <= oracle::kPhiCap) {
    const auto o = stage("oracle", [&] { return oracle::brute_phi(G); });
    phi = to_double(o.value);
    rep["oracle"] = {{"phi", oracle_json(o)}};
  } else {
    rep["oracle"] = nullptr;
  }

  Json rounding{{"arv", nullptr}, {"sa", nullptr}, {"skipped", Json::array()}};
  std::optional<Cut> best;
  auto keep = [&](const Cut& c) {
    if (!best || c.expansion < best->expansion) best = c;
  };
  rounding::ArvRoundOptions ao;
  ao.extract.kappa = cfg.kappa;
  if (!outcome.is_cover()) {
    rounding["skipped"].push_back({{"method", "arv"}, {"reason", "certificate branch"}});
  } else if (cfg.delta > ao.cover_diameter_cap) {
    rounding["skipped"].push_back({{"method", "arv"}, {"reason", "cover diameter bound above rounding cap"}});
  } else {
    const auto rc = stage("round_arv", [&] { return rounding::round_arv(G, sol, *outcome.cover, mix_seed(seed, 2), ao); });
    rounding["arv"] = io::rounded_cut_to_json(rc);
    keep(rc.cut);
  }

  if (cfg.mode == "sa") {
    rounding::SaRoundOptions so;
    so.retry_cap = cfg.sa_retry_cap;
    so.extract.kappa = cfg.kappa;
    so.tol = cfg.tol;
    if (!outcome.is_cover()) {
      rounding["skipped"].push_back({{"method", "sa"}, {"reason", "certificate branch"}});
    } else {
      const auto C = rounding::medoids(outcome.cover->sets, squared_distances(sol));
      sdp::SolveInfo sainfo;
      const auto sr = stage("sa_sdp", [&] { return sdp::solve_sa_for_set(G, C, sopts, &sainfo); });
      const auto safeas = sdp::check_sa_feasibility(sr.solution, sr.sa, cfg.tol);
      Json sa{{"centers", sr.sa.R},
              {"objective", sr.solution.objective},
              {"iterations", sainfo.iterations},
              {"variables", sainfo.variables},
              {"feasibility",
               {{"probability_residual", safeas.probability_residual},
                {"mass_residual", safeas.mass_residual},
                {"max_triangle_violation", safeas.max_triangle_violation},
                {"max_same_side_distance", safeas.max_same_side_distance},
                {"decomposition_residual", safeas.decomposition_residual},
                {"pass", safeas.pass}}}};
      Json probs = Json::array();
      for (std::size_t b = 0; b < sr.sa.p.size(); ++b) {
        std::string bits(sr.sa.R.size(), '0');
        for (std::size_t i = 0; i < sr.sa.R.size(); ++i)
          if (b >> i & 1u) bits[i] = '1';
        probs.push_back({{"b", bits}, {"p", sr.sa.p[b]}});
      }
      sa["patterns"] = probs;
      const double diam = [&] {
        const auto d = squared_distances(sr.solution);
        double m = 0;
        for (const auto& S : outcome.cover->sets)
          if (!S.empty()) m = std::max(m, metric::diameter(S, d));
        return m;
      }();
      sa["cover_diameter"] = diam;
      if (diam > so.cover_diameter_cap) {
        rounding["skipped"].push_back({{"method", "sa"}, {"reason", "cover diameter under the lifted solution above cap"}});
      } else {
        const auto rc = stage("round_sa", [&] {
          return rounding::round_sa(G, sr.solution, sr.sa, *outcome.cover, mix_seed(seed, 3), so);
        });
        sa["cut"] = io::rounded_cut_to_json(rc);
        keep(rc.cut);
      }
      rounding["sa"] = sa;
    }
  }
  rep["rounding"] = rounding;

  Json summary{{"branch", outcome.is_cover() ? "cover" : "certificate"},
               {"coverage", outcome.cover ? Json(outcome.cover->covered_count) : Json(nullptr)},
               {"sdp", sol.objective},
               {"phi", phi ? Json(*phi) : Json(nullptr)},
               {"expansion", best ? Json(to_double(best->expansion)) : Json(nullptr)}};
  summary["ratio_sdp"] = best ? ratio(to_double(best->expansion), sol.objective) : Json(nullptr);
  summary["ratio_phi"] = best ? ratio(to_double(best->expansion), phi) : Json(nullptr);
  if (best) summary["cut"] = io::cut_to_json(*best);
  rep["summary"] = summary;
  return rep;
}

namespace {

std::string csv_field(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  return v.dump();
}

}  // namespace

std::string cmd_emit_plotdata(const ExperimentConfig& cfg) {
  validate(cfg);
  const fs::path dir(cfg.input_dir);
  if (!fs::is_directory(dir)) throw std::invalid_argument("emit-plotdata: missing input directory " + cfg.input_dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  struct Row {
    int k;
    std::string name;
    std::string line;
  };
  std::vector<Row> rows;
  for (const auto& f : files) {
    std::ifstream in(f);
    Json r;
    try {
      r = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument("emit-plotdata: " + f.filename().string() + " is not JSON: " + e.what());
    }
    if (!r.is_object() || r.value("command", "") != "pipeline") continue;
    const auto& c = r.at("config");
    const auto& s = r.at("summary");
    const Json fields[] = {c.at("k"), c.at("mode"), c.at("eps"), c.at("delta"), c.at("seed"), r.at("graph").at("n"),
                           s.at("branch"), s.at("coverage"), s.at("sdp"), s.at("expansion"), s.at("phi"),
                           s.at("ratio_sdp"), s.at("ratio_phi"), Json(f.filename().string())};
    std::string line;
    for (const auto& v : fields) line += (line.empty() ? "" : ",") + csv_field(v);
    rows.push_back({c.at("k").get<int>(), f.filename().string(), line});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.k != b.k ? a.k < b.k : a.name < b.name;
  });
  std::string csv = std::string(kPlotHeader) + "\r\n";
  for (const auto& r : rows) csv += r.line + "\r\n";
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw std::invalid_argument("emit-plotdata: cannot write " + cfg.out);
    out << csv;
  }
  return csv;
}

}  // namespace sparsecut::cli
