#include "rclmc/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rclmc/moment_oracle.hpp"

namespace rclmc {

namespace {

// Neumaier compensated sum; makes reductions permutation-stable.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double get() const { return s + c; }
};

}  // namespace

MomentErrorReport moment_error(std::span<const double> phi_values,
                               double reference) {
  if (phi_values.size() < 2)
    throw std::invalid_argument("moment_error: need at least 2 samples");

  KahanSum sum;
  for (double v : phi_values) sum.add(v);
  const double n = static_cast<double>(phi_values.size());
  const double mean = sum.get() / n;

  KahanSum sq;
  for (double v : phi_values) sq.add((v - mean) * (v - mean));
  const double var = sq.get() / (n - 1.0);

  MomentErrorReport rep;
  rep.estimate = mean;
  rep.reference = reference;
  rep.error = std::fabs(mean - reference);
  rep.std_error = std::sqrt(var / n);
  rep.n = phi_values.size();
  return rep;
}

MomentErrorReport moment_error(
    const EnsembleResult& ensemble,
    const std::function<double(std::span<const double>)>& phi,
    double reference) {
  std::vector<double> values;
  values.reserve(ensemble.chains.size());
  for (const auto& c : ensemble.chains)
    if (!c.diverged) values.push_back(phi(c.x));
  return moment_error(values, reference);
}

double phi_x1_sq(std::span<const double> x) { return x[0] * x[0]; }

double w2_gaussian(double mean1, double var1, double mean2, double var2, int d) {
  if (var1 <= 0.0 || var2 <= 0.0)
    throw std::invalid_argument("w2_gaussian: variances must be > 0");
  if (d < 1) throw std::invalid_argument("w2_gaussian: d must be >= 1");
  const double dm = mean1 - mean2;
  const double ds = std::sqrt(var1) - std::sqrt(var2);
  return std::sqrt(static_cast<double>(d) * (dm * dm + ds * ds));
}

double stationary_variance_overdamped_gaussian(double h) {
  if (h <= 0.0 || h >= 2.0)
    throw std::domain_error(
        "stationary_variance_overdamped_gaussian: need 0 < h < 2");
  return 1.0 / (1.0 - 0.5 * h);
}

namespace {

constexpr int kPlateauCap = 200000;

CounterexampleReport oracle_part(SamplerVariant kind, int d, double h,
                                 std::int64_t steps) {
  if (!is_underdamped(kind))
    throw std::invalid_argument("counterexample oracle needs an underdamped kind");
  const InitMoments init{1.0 / 8.0, 1.0, 0.0, 1.0};
  CounterexampleReport rep;
  rep.d = d;
  rep.h = h;
  rep.bound = static_cast<double>(d) * static_cast<double>(d) * h / 288.0;

  if (steps <= 0) {
    const PlateauSearch ps = oracle_steps_to_plateau(
        kind, d, h, 1.0, init, MomentObservable::w_sq, kPlateauCap);
    rep.steps = ps.steps;
    rep.plateaued = trajectory_plateaued(ps.trajectory);
    rep.oracle_w2 = ps.trajectory.back();
  } else {
    const MomentTrajectory tr =
        propagate_gaussian_moments(kind, d, h, 1.0, init, static_cast<int>(steps));
    rep.steps = steps;
    rep.plateaued = trajectory_plateaued(tr.ew2);
    rep.oracle_w2 = tr.ew2.back();
  }
  rep.oracle_excess = rep.oracle_w2 - 2.0 * static_cast<double>(d);
  return rep;
}

}  // namespace

CounterexampleReport counterexample_oracle(int d, double h, std::int64_t steps) {
  return oracle_part(SamplerVariant::rcd_u_lmc, d, h, steps);
}

CounterexampleReport counterexample_oracle_for(SamplerVariant kind, int d,
                                               double h, std::int64_t steps) {
  return oracle_part(kind, d, h, steps);
}

CounterexampleReport counterexample_check(int d, double h, std::int64_t steps,
                                          std::size_t n_chains,
                                          std::uint64_t seed, int threads) {
  CounterexampleReport rep = oracle_part(SamplerVariant::rcd_u_lmc, d, h, steps);
  rep.n_chains = n_chains;

  auto target = std::make_shared<const TargetModel>(make_gaussian_target(d));
  ChainConfig cfg;
  cfg.target = target;
  cfg.kind = {SamplerVariant::rcd_u_lmc, GradMode::exact};
  cfg.params = {h, 1e-12, 1.0};  // eta unused in exact mode
  cfg.steps = rep.steps;
  cfg.seed = seed;
  cfg.init = {1.0 / 8.0, 1.0, 0.0, 1.0};

  const EnsembleResult ens = run_ensemble(cfg, n_chains, threads);
  std::vector<double> w2;
  w2.reserve(n_chains);
  for (const auto& c : ens.chains) {
    if (c.diverged) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      const double w = c.x[i] + c.v[i];
      s += w * w;
    }
    w2.push_back(s);
  }
  const MomentErrorReport mer = moment_error(w2, rep.oracle_w2);
  rep.measured_w2 = mer.estimate;
  rep.measured_se = mer.std_error;
  rep.excess = rep.measured_w2 - 2.0 * static_cast<double>(d);
  return rep;
}

}  // namespace rclmc
