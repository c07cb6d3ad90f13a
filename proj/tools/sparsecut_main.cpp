#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sparsecut/cli.hpp"

using sparsecut::cli::ExperimentConfig;

namespace {

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + out);
  f << text;
}

void add_graph_flags(CLI::App* app, ExperimentConfig& cfg) {
  app->add_option("--graph", cfg.graph, "graph file (header 'n r m', then one 'u v' per line)")->required();
  app->add_option("--spectrum-prefix", cfg.spectrum_prefix, "number of eigenvalues to report");
  app->add_option("--out", cfg.out, "output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsest cut relaxations, structure theorems and rounding"};
  app.require_subcommand(1);
  ExperimentConfig cfg;

  auto* diag = app.add_subcommand("diagnose", "spectrum prefix and brute-force expansion values");
  add_graph_flags(diag, cfg);

  auto* pipe = app.add_subcommand("pipeline", "SDP, structure theorem and rounding with a JSON report");
  add_graph_flags(pipe, cfg);
  std::uint64_t seed = 0;
  pipe->add_option("--mode", cfg.mode, "lambda, phi or sa")->check(CLI::IsMember({"lambda", "phi", "sa"}));
  pipe->add_option("--k", cfg.k, "number of clusters");
  pipe->add_option("--eps", cfg.eps, "coverage loss in (0,1)");
  pipe->add_option("--delta", cfg.delta, "cover diameter bound in (0,1)");
  pipe->add_option("--seed", seed, "random seed")->required();
  pipe->add_option("--tol", cfg.tol, "feasibility tolerance");
  pipe->add_option("--kappa", cfg.kappa, "cut-versus-spread threshold of the well-spread extraction");
  pipe->add_option("--trials", cfg.trials, "structure trials, best kept");
  pipe->add_option("--dim-retries", cfg.dim_retry_cap, "dimension reduction retry cap");
  pipe->add_option("--partition-retries", cfg.partition_retry_cap, "partition resampling cap");
  pipe->add_option("--sa-retries", cfg.sa_retry_cap, "sampling retry cap of the lifted rounding");
  pipe->add_option("--padded", cfg.padded, "padded partition scheme")->check(CLI::IsMember({"grid", "ckr"}));
  pipe->add_option("--lipschitz", cfg.lipschitz, "Lipschitz partition scheme")
      ->check(CLI::IsMember({"ball-carving", "ckr"}));

  auto* plot = app.add_subcommand("emit-plotdata", "CSV series from pipeline reports");
  plot->add_option("--input", cfg.input_dir, "directory of report .json files")->required();
  plot->add_option("--out", cfg.out, "CSV path (stdout when omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*diag) {
      cfg.command = "diagnose";
      emit(sparsecut::cli::dump_report(sparsecut::cli::cmd_diagnose(cfg)), cfg.out);
    } else if (*pipe) {
      cfg.command = "pipeline";
      cfg.seed = seed;
      emit(sparsecut::cli::dump_report(sparsecut::cli::cmd_pipeline(cfg)), cfg.out);
    } else {
      cfg.command = "emit-plotdata";
      const auto csv = sparsecut::cli::cmd_emit_plotdata(cfg);
      if (cfg.out.empty()) std::cout << csv;
    }
  } catch (const sparsecut::cli::StageError& e) {
    std::cerr << "error [" << e.stage() << "] " << e.kind() << ": " << e.what() << "\n";
    return 3;
  } catch (const sparsecut::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
