#ifndef RCLMC_DIAGNOSTICS_HPP
#define RCLMC_DIAGNOSTICS_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "rclmc/sampler.hpp"

namespace rclmc {

/// |ensemble mean of phi - E_p phi| with its Monte Carlo standard error.
struct MomentErrorReport {
  double estimate = 0.0;
  double reference = 0.0;
  double error = 0.0;      // |estimate - reference|
  double std_error = 0.0;  // sample std / sqrt(n)
  std::size_t n = 0;
};

/// phi values must have n >= 2. Summation is compensated, so the report is
/// invariant under permutation of the samples.
MomentErrorReport moment_error(std::span<const double> phi_values,
                               double reference);

/// Applies phi to the final positions of all non-diverged chains.
MomentErrorReport moment_error(
    const EnsembleResult& ensemble,
    const std::function<double(std::span<const double>)>& phi, double reference);

/// Default test function |x_1|^2.
double phi_x1_sq(std::span<const double> x);

/// 2-Wasserstein distance between isotropic Gaussians N(m1 * 1, v1 I_d) and
/// N(m2 * 1, v2 I_d): sqrt(d (m1-m2)^2 + d (sqrt(v1) - sqrt(v2))^2).
double w2_gaussian(double mean1, double var1, double mean2, double var2, int d);

/// Stationary per-coordinate variance of the exact-gradient overdamped chain
/// on f = |x|^2/2 at time step h: 1 / (1 - h/2). Requires 0 < h < 2 (the
/// chain is unstable otherwise).
double stationary_variance_overdamped_gaussian(double h);

/*
 * The vanilla-RCD underdamped chain on the standard Gaussian with gamma = 1,
 * exact directional derivatives, and the shifted start x ~ N((1/8) 1, I),
 * v ~ N(0, I). The coordinate-selection variance inflates the stationary
 * second moment E|w|^2 (w = x + v) above the equilibrium value 2d by at
 * least d^2 h / 288; the exact moment recursion is the oracle, the ensemble
 * confirms it.
 */
struct CounterexampleReport {
  int d = 0;
  double h = 0.0;
  std::int64_t steps = 0;
  std::size_t n_chains = 0;
  double measured_w2 = 0.0;  // ensemble E|w^M|^2
  double measured_se = 0.0;
  double oracle_w2 = 0.0;    // exact recursion value at step M
  double excess = 0.0;       // measured - 2d
  double oracle_excess = 0.0;
  double bound = 0.0;        // d^2 h / 288
  bool plateaued = false;    // oracle trajectory satisfied the plateau rule
};

/// steps == 0 selects the stopping index automatically from the oracle
/// (trailing-10% change < 1%, capped at 200000).
CounterexampleReport counterexample_check(int d, double h, std::int64_t steps,
                                          std::size_t n_chains,
                                          std::uint64_t seed = 0,
                                          int threads = 0);

/// Oracle-only variant (no ensemble; measured fields are zero).
CounterexampleReport counterexample_oracle(int d, double h,
                                           std::int64_t steps = 0);

/// Same oracle recursion for a different underdamped kind; u_lmc gives the
/// variance-free control whose excess isolates the RCD contribution.
CounterexampleReport counterexample_oracle_for(SamplerVariant kind, int d,
                                               double h, std::int64_t steps = 0);

}  // namespace rclmc

#endif  // RCLMC_DIAGNOSTICS_HPP
