#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sparsecut/errors.hpp"
#include "sparsecut/serialize.hpp"

namespace sparsecut::cli {

using Json = io::Json;

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  std::string command;  // diagnose, pipeline, emit-plotdata
  std::string graph;
  std::string mode = "lambda";  // lambda, phi, sa
  int k = 2;
  double eps = 0.5;
  double delta = 1.0 / 256;
  double tol = 1e-6;
  double kappa = 16;
  int trials = 1;
  int dim_retry_cap = 64;
  int partition_retry_cap = 32;
  int sa_retry_cap = 200;
  std::string padded = "grid";
  std::string lipschitz = "ball-carving";
  std::optional<std::uint64_t> seed;
  int spectrum_prefix = 8;
  std::string input_dir;  // emit-plotdata
  std::string out;
};

/// Throws std::invalid_argument naming the first out-of-range field.
void validate(const ExperimentConfig& cfg);

Json config_to_json(const ExperimentConfig& cfg);

/// A failure inside a pipeline stage; what() reads "<stage>: <cause>".
class StageError : public Error {
 public:
  StageError(std::string stage, std::string kind, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)), kind_(std::move(kind)) {}
  const std::string& stage() const { return stage_; }
  const std::string& kind() const { return kind_; }  // class of the underlying error

 private:
  std::string stage_;
  std::string kind_;
};

/// {n, r, m, spectrum prefix, brute phi / phi_k / sse within caps}.
Json cmd_diagnose(const ExperimentConfig& cfg);

/// solve_arv, structure theorem, rounding; full report with traces.
Json cmd_pipeline(const ExperimentConfig& cfg);

/// CSV (one row per pipeline report in input_dir, sorted by k then file
/// name). Writes to cfg.out when set and returns the text.
std::string cmd_emit_plotdata(const ExperimentConfig& cfg);

inline constexpr const char* kPlotHeader =
    "k,mode,eps,delta,seed,n,branch,coverage,sdp,expansion,phi,ratio_sdp,ratio_phi,source";

/// Serialized report text: two-space indentation and a trailing newline.
std::string dump_report(const Json& report);

}  // namespace sparsecut::cli
