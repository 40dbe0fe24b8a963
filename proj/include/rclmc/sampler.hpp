#ifndef RCLMC_SAMPLER_HPP
#define RCLMC_SAMPLER_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "rclmc/kinds.hpp"
#include "rclmc/target.hpp"
#include "rclmc/validate.hpp"

namespace rclmc {

struct SamplerKind {
  SamplerVariant variant = SamplerVariant::o_lmc;
  GradMode mode = GradMode::finite_difference;
};

/// Isotropic Gaussian initial law; the v fields are used only by the
/// underdamped variants.
struct InitDistribution {
  double mean_x = 0.0;
  double std_x = 1.0;
  double mean_v = 0.0;
  double std_v = 1.0;
};

struct ChainConfig {
  std::shared_ptr<const TargetModel> target;
  SamplerKind kind;
  KernelParams params;
  std::int64_t steps = 0;
  std::uint64_t seed = 0;  // chain seed for run_chain; master seed for run_ensemble
  InitDistribution init;
  int thin = 0;  // 0: keep final state only; k > 0: snapshot x every k steps
};

struct ChainOutput {
  std::vector<double> x;  // final position
  std::vector<double> v;  // final velocity (empty for overdamped kinds)
  std::uint64_t evals = 0;
  std::int64_t steps_done = 0;
  bool diverged = false;
  std::vector<double> final_memory;  // RCAD memory g at exit (RCAD kinds only)
  std::vector<std::vector<double>> trajectory;  // thinned x snapshots
  double wall_ms = 0.0;
};

/*
 * Runs one chain of the configured variant for config.steps steps.
 *
 * Per-step cost in partial-derivative evaluations: d for the full-gradient
 * variants, 1 for the RCD and RCAD variants; the RCAD variants pay d once at
 * initialization. Same seed, same config: bit-identical output.
 *
 * Draw order within a step is fixed: coordinate index first (RCD/RCAD only;
 * consumes nothing at d = 1), then the Gaussian noise in coordinate order
 * (x block, then v block for underdamped kinds).
 *
 * A non-finite coordinate halts the chain with diverged = true; the partial
 * trajectory and counters are returned as-is.
 */
ChainOutput run_chain(const ChainConfig& config);

struct EnsembleResult {
  std::vector<ChainOutput> chains;  // in chain-index order
  std::uint64_t total_evals = 0;
  std::size_t diverged_count = 0;
};

/// N independent chains; chain i runs with chain_seed(config.seed, i).
/// threads <= 0 selects the hardware concurrency. Results are identical for
/// every thread count.
EnsembleResult run_ensemble(const ChainConfig& config, std::size_t n_chains,
                            int threads = 0);

}  // namespace rclmc

#endif  // RCLMC_SAMPLER_HPP
