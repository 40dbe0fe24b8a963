#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rclmc/diagnostics.hpp"
#include "rclmc/moment_oracle.hpp"
#include "rclmc/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitIo = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SweepArgs {
  std::string config_path;
  std::string out_override;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool exact_gradients = false;
  bool timings = false;
};

int run_sweep_cmd(const SweepArgs& args) {
  rclmc::ParsedConfig parsed;
  try {
    parsed = rclmc::parse_config_file(args.config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  rclmc::SweepSpec spec = parsed.spec;
  if (args.seed_set) spec.seed = args.seed;
  if (!args.out_override.empty()) spec.out_path = args.out_override;
  if (args.exact_gradients) spec.mode = rclmc::GradMode::exact;
  spec.record_timings = args.timings;

  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";

  rclmc::SweepResult result;
  try {
    result = rclmc::run_sweep(spec, args.threads);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  for (const auto& r : result.rows) {
    std::cout << r.sampler << " h=" << r.h << " eta=" << r.eta
              << " M=" << r.steps << ": ";
    if (r.failed)
      std::cout << "FAILED (" << r.diverged << "/" << r.n_chains
                << " chains diverged)";
    else
      std::cout << "error=" << fmt17(r.error) << " se=" << fmt17(r.std_error)
                << " evals=" << r.evals << " wall=" << r.wall_ms << "ms";
    std::cout << "\n";
  }

  if (!spec.out_path.empty()) {
    try {
      rclmc::emit_csv(result, spec.out_path);
      std::cout << "wrote " << spec.out_path << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  return result.any_failed ? kExitDivergence : kExitOk;
}

int run_validate_cmd(const std::string& config_path) {
  try {
    const rclmc::ParsedConfig parsed = rclmc::parse_config_file(config_path);
    if (parsed.warnings.empty()) {
      std::cout << "all (sampler, h) cells satisfy the admissibility conditions\n";
    } else {
      for (const auto& w : parsed.warnings) std::cout << "warning: " << w << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

struct CounterArgs {
  std::vector<int> dims;
  double h = 5e-4;
  std::size_t n_chains = 20000;
  std::int64_t steps = 0;  // 0: plateau-capped via the oracle
  std::uint64_t seed = 0;
  int threads = 0;
  bool control = false;  // add oracle-only U-LMC rows
  std::string out;
};

int run_counterexample_cmd(const CounterArgs& args) {
  std::ostringstream csv;
  csv << "# rclmc " << rclmc::kVersion << " counterexample\n";
  csv << "sampler,d,h,M,N,measured_w2,measured_se,oracle_w2,excess,"
         "oracle_excess,bound,plateaued\n";

  for (const int d : args.dims) {
    const rclmc::CounterexampleReport rep = rclmc::counterexample_check(
        d, args.h, args.steps, args.n_chains, args.seed, args.threads);
    csv << "RCD-U-LMC," << d << ',' << fmt17(rep.h) << ',' << rep.steps << ','
        << rep.n_chains << ',' << fmt17(rep.measured_w2) << ','
        << fmt17(rep.measured_se) << ',' << fmt17(rep.oracle_w2) << ','
        << fmt17(rep.excess) << ',' << fmt17(rep.oracle_excess) << ','
        << fmt17(rep.bound) << ',' << (rep.plateaued ? 1 : 0) << '\n';
    std::cout << "d=" << d << ": measured E|w|^2=" << rep.measured_w2 << " (se "
              << rep.measured_se << "), oracle " << rep.oracle_w2
              << ", oracle excess " << rep.oracle_excess << ", bound d^2 h/288 = "
              << rep.bound << (rep.plateaued ? "" : " [NOT PLATEAUED]") << "\n";
    if (args.control) {
      const rclmc::CounterexampleReport ctl =
          rclmc::counterexample_oracle_for(rclmc::SamplerVariant::u_lmc, d,
                                           args.h, args.steps);
      csv << "U-LMC," << d << ',' << fmt17(ctl.h) << ',' << ctl.steps << ",0,"
          << "nan,nan," << fmt17(ctl.oracle_w2) << ",nan,"
          << fmt17(ctl.oracle_excess) << ',' << fmt17(ctl.bound) << ','
          << (ctl.plateaued ? 1 : 0) << '\n';
      std::cout << "  U-LMC control: oracle excess " << ctl.oracle_excess
                << "\n";
    }
  }

  if (!args.out.empty()) {
    std::ofstream f(args.out, std::ios::binary);
    if (!f || !(f << csv.str())) {
      std::cerr << "error: cannot write " << args.out << "\n";
      return kExitIo;
    }
    std::cout << "wrote " << args.out << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Langevin Monte Carlo with random-coordinate gradient "
               "surrogates and variance reduction"};
  app.set_help_flag("--help", "print help");  // frees -h for the step option
  app.set_version_flag("--version", std::string("rclmc ") + rclmc::kVersion);
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "run a sampler x stepsize sweep");
  sweep->add_option("config", sweep_args.config_path, "config file")->required();
  auto* seed_opt =
      sweep->add_option("--seed", sweep_args.seed, "master seed (overrides config)");
  sweep->add_option("--out", sweep_args.out_override, "CSV output path");
  sweep->add_option("--threads", sweep_args.threads, "worker threads (0 = auto)");
  sweep->add_flag("--exact-gradients", sweep_args.exact_gradients,
                  "use exact partial derivatives (oracle mode)");
  sweep->add_flag("--timings", sweep_args.timings,
                  "record real wall times in the CSV (breaks byte determinism)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "admissibility report only");
  validate->add_option("config", validate_path, "config file")->required();

  CounterArgs counter_args;
  auto* counter = app.add_subcommand(
      "counterexample", "stationary second-moment excess of RCD-U-LMC");
  counter->add_option("--d", counter_args.dims, "dimensions")->required();
  counter->add_option("--h", counter_args.h, "time step");
  counter->add_option("--n", counter_args.n_chains, "ensemble size");
  counter->add_option("--m", counter_args.steps, "steps (0 = oracle plateau)");
  counter->add_option("--seed", counter_args.seed, "master seed");
  counter->add_option("--threads", counter_args.threads, "worker threads");
  counter->add_flag("--control", counter_args.control,
                    "add oracle-only U-LMC control rows");
  counter->add_option("--out", counter_args.out, "CSV output path");

  CLI11_PARSE(app, argc, argv);

  sweep_args.seed_set = seed_opt->count() > 0;

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (validate->parsed()) return run_validate_cmd(validate_path);
    if (counter->parsed()) return run_counterexample_cmd(counter_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
