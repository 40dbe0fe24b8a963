#ifndef RCLMC_SWEEP_HPP
#define RCLMC_SWEEP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rclmc/sampler.hpp"

namespace rclmc {

inline constexpr const char* kVersion = "0.1.0";

enum class EtaRule { by_kind_default, fixed, h_proportional, h_cubed_proportional };

/// One sampler x stepsize sweep over a single target, parsed from the flat
/// key = value config format (see README for the key reference).
struct SweepSpec {
  std::string target_name = "gaussian";  // gaussian | mixture
  int dim = 10;
  double gauss_mean = 0.0;
  double gauss_sigma2 = 1.0;
  double mixture_c = 2.0;

  std::vector<SamplerVariant> samplers;
  std::vector<double> h_values;

  EtaRule eta_rule = EtaRule::by_kind_default;
  double eta_param = 0.0;  // fixed value, or proportionality factor

  bool gamma_auto = true;  // gamma = 1/L
  double gamma = 1.0;

  std::size_t n_chains = 1000;
  bool steps_auto = false;  // stopping index from the moment oracle plateau
  std::int64_t steps = 0;
  std::int64_t steps_cap = 20000;

  std::uint64_t seed = 0;
  InitDistribution init;
  GradMode mode = GradMode::finite_difference;

  std::string out_path;
  bool record_timings = false;  // when false, wall_ms is written as 0 so
                                // reruns are byte-identical
};

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& what_)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct ParsedConfig {
  SweepSpec spec;
  std::vector<std::string> warnings;  // admissibility findings, one per (sampler, h)
};

/// Throws ConfigError on unknown keys, missing required keys, or malformed
/// values.
ParsedConfig parse_config(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

/// Target and eta resolution shared by the sweep driver and the CLI.
TargetModel make_target(const SweepSpec& spec);
double resolve_eta(const SweepSpec& spec, SamplerVariant kind, double h);
double resolve_gamma(const SweepSpec& spec, const TargetModel& target);

struct SweepRow {
  std::string sampler;
  int d = 0;
  double h = 0.0;
  double eta = 0.0;
  std::int64_t steps = 0;
  std::size_t n_chains = 0;
  double error = 0.0;      // NaN when the cell failed
  double std_error = 0.0;  // NaN when the cell failed
  std::uint64_t evals = 0;
  double wall_ms = 0.0;
  std::uint64_t seed = 0;  // per-cell master seed
  bool failed = false;     // divergence fraction exceeded 1/2
  std::size_t diverged = 0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // declared (sampler, h) order
  bool any_failed = false;
};

/// Runs every (sampler, h) cell: ensemble, then the moment error of
/// phi = |x_1|^2 against the target's analytic reference. Deterministic for
/// a fixed master seed at any thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Writes header + rows with 17-significant-digit floats. Throws
/// std::runtime_error with the path on I/O failure.
void emit_csv(const SweepResult& result, const std::string& path);
std::string csv_string(const SweepResult& result);

}  // namespace rclmc

#endif  // RCLMC_SWEEP_HPP
