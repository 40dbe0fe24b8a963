#ifndef RCLMC_GRAD_HPP
#define RCLMC_GRAD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "rclmc/target.hpp"

namespace rclmc {

/// Counts partial-derivative approximations. One centered difference of one
/// coordinate (two potential evaluations) counts as one; so does one exact
/// partial when a sampler runs in exact-gradient mode. This is the cost unit
/// used everywhere for comparing methods.
struct EvalCounter {
  std::uint64_t evals = 0;
  void add(std::uint64_t n = 1) { evals += n; }
};

/// Per-chain memory of the variance-reduced estimator: the vector g of stale
/// partial derivatives, plus the cumulative evaluation count.
struct GradMemory {
  std::vector<double> g;
  std::uint64_t evals = 0;
};

struct FluxResult {
  std::vector<double> flux;  // equals the input g except in coordinate r
  GradMemory memory;         // g with coordinate r refreshed
  int r = 0;
};

/// Centered difference (f(x + eta e_i) - f(x - eta e_i)) / (2 eta).
/// x is perturbed in place and restored exactly before returning.
double central_difference(const TargetModel& target, std::span<double> x, int i,
                          double eta, EvalCounter& counter);

/// All d centered differences of f at x.
void full_gradient_fd(const TargetModel& target, std::span<double> x, double eta,
                      std::span<double> grad_out, EvalCounter& counter);
std::vector<double> full_gradient_fd(const TargetModel& target,
                                     std::span<double> x, double eta,
                                     EvalCounter& counter);

/// Single-coordinate estimator d * (centered difference in coordinate r) * e_r.
/// Unbiased over r drawn uniformly from {0, ..., d-1}; r is injected by the
/// caller so tests can enumerate it.
std::vector<double> rcd_estimate(const TargetModel& target, std::span<double> x,
                                 double eta, int r, EvalCounter& counter);

/// Memory initialization: one full finite-difference gradient (d evals).
GradMemory rcad_init(const TargetModel& target, std::span<double> x0, double eta);

/// One refresh-and-flux step:
///   g'[r] = fresh partial at x, g'[i] = g[i] otherwise,
///   F = g + d (g' - g),  i.e.  F[r] = d * fresh - (d-1) * g[r].
/// `exact` replaces the centered difference by the exact partial (counts the
/// same). One eval.
FluxResult rcad_flux(const TargetModel& target, const GradMemory& mem,
                     std::span<double> x, double eta, int r, bool exact = false);

/// In-place flux used by the chain runner: refreshes mem and writes F into
/// flux_out without allocating. Identical arithmetic to rcad_flux.
void rcad_flux_inplace(const TargetModel& target, GradMemory& mem,
                       std::span<double> x, double eta, int r,
                       std::span<double> flux_out, bool exact = false);

/// Test oracle: E_r |grad f(x) - F(r)|^2 by enumerating all d coordinate
/// choices, with exact partials (eta-free). Equals (d-1) |grad f(x) - g|^2.
/// Requires target.exact_partial.
double rcad_error_variance_enumerated(const TargetModel& target,
                                      const GradMemory& mem,
                                      std::span<const double> x);

}  // namespace rclmc

#endif  // RCLMC_GRAD_HPP
