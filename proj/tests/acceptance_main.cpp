// Acceptance suite: one numbered check per release criterion, each printed as
// a single [PASS]/[FAIL] line with the measured values. Exit code is the
// number of failed criteria.
//
// Run a subset with:  rclmc_acceptance 1 5 9

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rclmc/diagnostics.hpp"
#include "rclmc/grad.hpp"
#include "rclmc/kernels.hpp"
#include "rclmc/moment_oracle.hpp"
#include "rclmc/rng.hpp"
#include "rclmc/sampler.hpp"
#include "rclmc/sweep.hpp"

using namespace rclmc;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream log;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    FAILED: " << what << "\n";
    }
  }
  void note(const std::string& what) { log << "    " << what << "\n"; }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. Unbiasedness and variance identity of the variance-reduced flux,
//    enumerated over all coordinate choices on random quadratics.
// ---------------------------------------------------------------------------
void criterion_1(Check& c) {
  TargetModel t;
  ChainRng rng(10001);
  int instances = 0;
  double worst_mean = 0.0, worst_var = 0.0;
  while (instances < 200) {
    const int d = 1 + rng.uniform_index(8);
    std::vector<double> a(static_cast<std::size_t>(d)), b(a.size()), g(a.size()),
        x(a.size());
    for (auto& v : a) v = 0.5 + 1.5 * rng.uniform01();
    for (auto& v : b) v = 2.0 * rng.uniform01() - 1.0;
    for (auto& v : g) v = 4.0 * rng.uniform01() - 2.0;
    for (auto& v : x) v = 4.0 * rng.uniform01() - 2.0;

    t = TargetModel{};
    t.dim = d;
    t.name = "quadratic";
    t.potential = [a, b](std::span<const double> y) {
      double s = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i)
        s += 0.5 * a[i] * (y[i] - b[i]) * (y[i] - b[i]);
      return s;
    };
    t.exact_partial = [a, b](std::span<const double> y, int i) {
      const auto ii = static_cast<std::size_t>(i);
      return a[ii] * (y[ii] - b[ii]);
    };

    GradMemory mem{g, static_cast<std::uint64_t>(d)};
    std::vector<double> mean(a.size(), 0.0);
    for (int r = 0; r < d; ++r) {
      const FluxResult fr = rcad_flux(t, mem, x, 0.0, r, /*exact=*/true);
      for (std::size_t i = 0; i < mean.size(); ++i)
        mean[i] += fr.flux[i] / static_cast<double>(d);
    }
    double dist2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const double gi = t.exact_partial(x, i);
      worst_mean = std::max(worst_mean, std::fabs(mean[ii] - gi));
      dist2 += (gi - g[ii]) * (gi - g[ii]);
    }
    const double enumerated = rcad_error_variance_enumerated(t, mem, x);
    const double identity = (d - 1.0) * dist2;
    if (identity > 0.0)
      worst_var = std::max(worst_var, std::fabs(enumerated - identity) / identity);
    ++instances;
  }
  c.note("200 instances, worst |mean - grad| = " + fmt(worst_mean, 3) +
         ", worst relative variance mismatch = " + fmt(worst_var, 3));
  c.require(worst_mean <= 1e-12, "flux mean within 1e-12 of the gradient");
  c.require(worst_var <= 1e-10, "variance identity within 1e-10 relative");
}

// ---------------------------------------------------------------------------
// 2. Underdamped kernel moments: PSD covariance over the (h, gamma) grid,
//    small-h leading orders, and a 1e6-draw Monte Carlo check at d = 1.
// ---------------------------------------------------------------------------
void criterion_2(Check& c) {
  for (double gamma : {0.1, 1.0, 10.0}) {
    for (double h : {1e-4, 1e-2, 0.1, 0.5}) {
      const UnderdampedCoeffs k = underdamped_coeffs(h, gamma);
      const double det = k.cov_xx * k.cov_vv - k.cov_xv * k.cov_xv;
      c.require(k.cov_xx >= 0.0 && k.cov_vv >= 0.0 && det >= -1e-15,
                "PSD at h=" + fmt(h) + " gamma=" + fmt(gamma) +
                    " (det=" + fmt(det, 3) + ")");
    }
    const UnderdampedCoeffs k = underdamped_coeffs(1e-3, gamma);
    const double rv = k.cov_vv / (4.0 * gamma * 1e-3);
    const double rx = k.cov_xx / ((4.0 / 3.0) * gamma * 1e-9);
    c.require(std::fabs(rv - 1.0) <= 0.05,
              "cov_vv/(4 gamma h) within 5% at h=1e-3 (got " + fmt(rv) + ")");
    c.require(std::fabs(rx - 1.0) <= 0.05,
              "cov_xx/((4/3) gamma h^3) within 5% at h=1e-3 (got " + fmt(rx) + ")");
  }

  const double h = 0.1, gamma = 1.0;
  const UnderdampedCoeffs k = underdamped_coeffs(h, gamma);
  const UnderdampedState s0{{0.3}, {-0.2}};
  const std::vector<double> flux = {0.5};
  const UnderdampedMoments m = underdamped_moments(s0, flux, h, gamma);

  const int n = 1000000;
  ChainRng rng(20002);
  double sx = 0, sv = 0, sxx = 0, svv = 0, sxv = 0;
  std::vector<double> noise(2);
  for (int i = 0; i < n; ++i) {
    UnderdampedState s = s0;
    noise[0] = rng.normal();
    noise[1] = rng.normal();
    underdamped_step(s, flux, k, noise);
    sx += s.x[0];
    sv += s.v[0];
    sxx += s.x[0] * s.x[0];
    svv += s.v[0] * s.v[0];
    sxv += s.x[0] * s.v[0];
  }
  const double mx = sx / n, mv = sv / n;
  const double cxx = sxx / n - mx * mx;
  const double cvv = svv / n - mv * mv;
  const double cxv = sxv / n - mx * mv;
  const double se_mx = std::sqrt(k.cov_xx / n), se_mv = std::sqrt(k.cov_vv / n);
  const double se_cxx = k.cov_xx * std::sqrt(2.0 / (n - 1.0));
  const double se_cvv = k.cov_vv * std::sqrt(2.0 / (n - 1.0));
  const double se_cxv =
      std::sqrt((k.cov_xx * k.cov_vv + k.cov_xv * k.cov_xv) / (n - 1.0));

  c.note("MC (1e6 draws): mean_x err " + fmt((mx - m.mean_x[0]) / se_mx, 2) +
         " se, cov_xx err " + fmt((cxx - k.cov_xx) / se_cxx, 2) +
         " se, cov_vv err " + fmt((cvv - k.cov_vv) / se_cvv, 2) +
         " se, cov_xv err " + fmt((cxv - k.cov_xv) / se_cxv, 2) + " se");
  c.require(std::fabs(mx - m.mean_x[0]) <= 3.0 * se_mx, "MC mean_x within 3 se");
  c.require(std::fabs(mv - m.mean_v[0]) <= 3.0 * se_mv, "MC mean_v within 3 se");
  c.require(std::fabs(cxx - k.cov_xx) <= 3.0 * se_cxx, "MC cov_xx within 3 se");
  c.require(std::fabs(cvv - k.cov_vv) <= 3.0 * se_cvv, "MC cov_vv within 3 se");
  c.require(std::fabs(cxv - k.cov_xv) <= 3.0 * se_cxv, "MC cov_xv within 3 se");
}

// ---------------------------------------------------------------------------
// 3. Overdamped stationary variance against the 1/(1 - h/2) oracle at
//    h = 0.05, d = 10, for the full-gradient and variance-reduced chains.
//    (The analytic value at this h is 1.025641; the exact extended moment
//    recursion puts the RCAD chain at 1.76707 because h d = 0.5 is far above
//    the admissible regime, so the RCAD half of this criterion cannot hold.
//    It runs unweakened; the oracle prediction is printed alongside.)
// ---------------------------------------------------------------------------
void criterion_3(Check& c) {
  const int d = 10;
  const double h = 0.05, eta = 1e-4;
  const std::size_t n = 200000;
  const std::int64_t steps = 600;  // past the oracle plateau for both kinds
  const double oracle = stationary_variance_overdamped_gaussian(h);
  c.note("oracle 1/(1-h/2) = " + fmt(oracle, 8) + " at h = " + fmt(h));

  auto target = std::make_shared<const TargetModel>(make_gaussian_target(d));
  for (const SamplerVariant kind :
       {SamplerVariant::o_lmc, SamplerVariant::rcad_o_lmc}) {
    ChainConfig cfg;
    cfg.target = target;
    cfg.kind = {kind, GradMode::finite_difference};
    cfg.params = {h, eta, 1.0};
    cfg.steps = steps;
    cfg.seed = 30003;
    cfg.init = {0.0, 1.0, 0.0, 1.0};
    const EnsembleResult ens = run_ensemble(cfg, n);

    // pooled per-coordinate variance
    double mean = 0.0, sq = 0.0;
    for (const auto& ch : ens.chains)
      for (double xi : ch.x) {
        mean += xi;
        sq += xi * xi;
      }
    const double cnt = static_cast<double>(n) * d;
    mean /= cnt;
    const double var = sq / cnt - mean * mean;

    const InitMoments im{0.0, 1.0, 0.0, 1.0};
    const MomentTrajectory tr = propagate_gaussian_moments(
        kind, d, h, 1.0, im, static_cast<int>(steps));
    c.note(std::string(variant_name(kind)) + ": measured variance " +
           fmt(var, 8) + ", exact recursion " + fmt(tr.var_x.back(), 8));
    c.require(std::fabs(var - oracle) <= 0.01,
              std::string(variant_name(kind)) + " variance within +-0.01 of " +
                  fmt(oracle, 8) + " (got " + fmt(var, 8) + ")");
  }
}

// ---------------------------------------------------------------------------
// 4. Ensemble moments match the exact linear-Gaussian recursion at
//    m in {10, 100, 2000} for the four Markovian kinds on N(0, I_4).
// ---------------------------------------------------------------------------
void criterion_4(Check& c) {
  const int d = 4;
  const double h = 0.01;
  const std::size_t n = 100000;
  const InitDistribution init{0.5, 1.0, 0.0, 1.0};
  const InitMoments im{0.5, 1.0, 0.0, 1.0};
  auto target = std::make_shared<const TargetModel>(make_gaussian_target(d));

  for (const SamplerVariant kind :
       {SamplerVariant::o_lmc, SamplerVariant::rcd_o_lmc, SamplerVariant::u_lmc,
        SamplerVariant::rcd_u_lmc}) {
    const MomentTrajectory tr = propagate_gaussian_moments(kind, d, h, 1.0, im, 2000);
    for (const int m : {10, 100, 2000}) {
      ChainConfig cfg;
      cfg.target = target;
      cfg.kind = {kind, GradMode::finite_difference};
      cfg.params = {h, resolve_eta(SweepSpec{}, kind, h), 1.0};
      cfg.steps = m;
      cfg.seed = 40004;
      cfg.init = init;
      const EnsembleResult ens = run_ensemble(cfg, n);

      auto stat = [&](auto&& f) {
        double s = 0, s2 = 0;
        for (const auto& ch : ens.chains) {
          const double v = f(ch);
          s += v;
          s2 += v * v;
        }
        const double mean = s / static_cast<double>(n);
        const double var =
            (s2 / static_cast<double>(n) - mean * mean) * n / (n - 1.0);
        return std::pair<double, double>(mean, std::sqrt(var / n));
      };
      const auto mu = static_cast<std::size_t>(m);
      auto [ex2, se_x] = stat([](const ChainOutput& ch) {
        double s = 0;
        for (double xi : ch.x) s += xi * xi;
        return s;
      });
      c.require(std::fabs(ex2 - tr.ex2[mu]) <= 3.0 * se_x,
                std::string(variant_name(kind)) + " E|x|^2 at m=" +
                    std::to_string(m) + " (got " + fmt(ex2) + ", oracle " +
                    fmt(tr.ex2[mu]) + ", se " + fmt(se_x, 3) + ")");
      if (is_underdamped(kind)) {
        auto [ev2, se_v] = stat([](const ChainOutput& ch) {
          double s = 0;
          for (double vi : ch.v) s += vi * vi;
          return s;
        });
        auto [ew2, se_w] = stat([](const ChainOutput& ch) {
          double s = 0;
          for (std::size_t i = 0; i < ch.x.size(); ++i) {
            const double w = ch.x[i] + ch.v[i];
            s += w * w;
          }
          return s;
        });
        c.require(std::fabs(ev2 - tr.ev2[mu]) <= 3.0 * se_v,
                  std::string(variant_name(kind)) + " E|v|^2 at m=" +
                      std::to_string(m) + " (got " + fmt(ev2) + ", oracle " +
                      fmt(tr.ev2[mu]) + ")");
        c.require(std::fabs(ew2 - tr.ew2[mu]) <= 3.0 * se_w,
                  std::string(variant_name(kind)) + " E|w|^2 at m=" +
                      std::to_string(m) + " (got " + fmt(ew2) + ", oracle " +
                      fmt(tr.ew2[mu]) + ")");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 5. Counter-example scaling: the stationary E|w|^2 excess of the vanilla-RCD
//    underdamped chain exceeds d^2 h / 288 and scales like d^2; ensemble
//    confirmation at d = 16.
// ---------------------------------------------------------------------------
void criterion_5(Check& c) {
  const double h = 5e-4;
  std::vector<double> excesses;
  std::int64_t steps16 = 0;
  for (const int d : {16, 32, 64}) {
    const CounterexampleReport rep = counterexample_oracle(d, h, 0);
    if (d == 16) steps16 = rep.steps;
    c.note("d=" + std::to_string(d) + ": oracle E|w|^2 = " + fmt(rep.oracle_w2, 8) +
           ", excess = " + fmt(rep.oracle_excess, 6) + ", bound = " +
           fmt(rep.bound, 6) + ", M = " + std::to_string(rep.steps));
    c.require(rep.plateaued, "oracle plateaued at d=" + std::to_string(d));
    c.require(rep.oracle_excess >= rep.bound,
              "excess >= d^2 h/288 at d=" + std::to_string(d));
    excesses.push_back(rep.oracle_excess);
  }
  for (std::size_t i = 1; i < excesses.size(); ++i) {
    const double ratio = excesses[i] / excesses[i - 1];
    c.note("excess ratio d=" + std::to_string(16 << i) + " / d=" +
           std::to_string(16 << (i - 1)) + " = " + fmt(ratio, 4));
    c.require(ratio >= 3.0 && ratio <= 5.3,
              "d^2 scaling ratio in [3, 5.3] (got " + fmt(ratio, 4) + ")");
  }

  const CounterexampleReport ens =
      counterexample_check(16, h, steps16, 20000, 50005);
  c.note("d=16 ensemble: measured " + fmt(ens.measured_w2, 8) + " (se " +
         fmt(ens.measured_se, 3) + "), oracle " + fmt(ens.oracle_w2, 8));
  c.require(std::fabs(ens.measured_w2 - ens.oracle_w2) <= 3.0 * ens.measured_se,
            "ensemble agrees with the oracle within 3 se at d=16");
}

// ---------------------------------------------------------------------------
// 6. Desk-scale stepsize sweeps, d = 100: variance-reduced error below
//    vanilla-RCD error for every h on both targets, and non-increasing in h
//    for the variance-reduced kinds.
//    (At d = 100 every h in this pinned grid puts the RCD/RCAD second-moment
//    recursions at or beyond their stability thresholds -- spectral radii
//    1.0035..5.0 -- so the chains explode and these ordinal claims cannot
//    hold. The cells run unweakened and report honestly.)
// ---------------------------------------------------------------------------
void criterion_6(Check& c) {
  const int d = 100;
  const std::size_t n = 100000;
  const std::vector<double> hs = {0.02, 0.05, 0.1, 0.2};

  struct Cell {
    double error = 0.0, se = 0.0;
    bool failed = true;
  };

  for (const std::string target_name : {std::string("gaussian"), std::string("mixture")}) {
    // error[kind][h]
    std::vector<std::vector<Cell>> cells(4, std::vector<Cell>(hs.size()));
    const SamplerVariant kinds[4] = {
        SamplerVariant::rcd_o_lmc, SamplerVariant::rcad_o_lmc,
        SamplerVariant::rcd_u_lmc, SamplerVariant::rcad_u_lmc};

    for (std::size_t hi = 0; hi < hs.size(); ++hi) {
      SweepSpec spec;
      spec.target_name = target_name;
      spec.dim = d;
      spec.mixture_c = 2.0;
      spec.samplers.assign(kinds, kinds + 4);
      spec.h_values = {hs[hi]};
      spec.n_chains = n;
      spec.steps = static_cast<std::int64_t>(std::ceil(8.0 / hs[hi]));
      spec.seed = 60006 + hi;
      spec.init = {0.5, 1.0, 0.0, 1.0};
      const SweepResult res = run_sweep(spec);
      for (std::size_t k = 0; k < 4; ++k) {
        cells[k][hi] = {res.rows[k].error, res.rows[k].std_error,
                        res.rows[k].failed};
        c.note(target_name + " " + res.rows[k].sampler + " h=" + fmt(hs[hi]) +
               " M=" + std::to_string(res.rows[k].steps) +
               (res.rows[k].failed
                    ? " FAILED (" + std::to_string(res.rows[k].diverged) +
                          " diverged)"
                    : " error=" + fmt(res.rows[k].error, 4) + " se=" +
                          fmt(res.rows[k].std_error, 3)));
      }
    }

    // RCAD <= RCD beyond combined 3 se, overdamped and underdamped pairs
    for (int pair = 0; pair < 2; ++pair) {
      const std::size_t rcd = static_cast<std::size_t>(2 * pair);
      const std::size_t rcad = rcd + 1;
      for (std::size_t hi = 0; hi < hs.size(); ++hi) {
        const Cell& a = cells[rcad][hi];
        const Cell& b = cells[rcd][hi];
        const bool ok = !a.failed && !b.failed &&
                        b.error - a.error >=
                            3.0 * std::sqrt(a.se * a.se + b.se * b.se);
        c.require(ok, target_name + " " +
                          std::string(variant_name(kinds[rcad])) + " error <= " +
                          std::string(variant_name(kinds[rcd])) +
                          " error beyond 3 se at h=" + fmt(hs[hi]));
      }
      // non-increasing errors as h decreases for the variance-reduced kind
      for (std::size_t hi = 0; hi + 1 < hs.size(); ++hi) {
        const Cell& small_h = cells[rcad][hi];
        const Cell& large_h = cells[rcad][hi + 1];
        const bool ok =
            !small_h.failed && !large_h.failed &&
            small_h.error <= large_h.error +
                                 3.0 * std::sqrt(small_h.se * small_h.se +
                                                 large_h.se * large_h.se);
        c.require(ok, target_name + " " +
                          std::string(variant_name(kinds[rcad])) +
                          " error non-increasing from h=" + fmt(hs[hi + 1]) +
                          " to h=" + fmt(hs[hi]));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// 7. Cost accounting: exact evaluation counts per kind at M = 1000, d = 50.
// ---------------------------------------------------------------------------
void criterion_7(Check& c) {
  auto target = std::make_shared<const TargetModel>(make_gaussian_target(50));
  const SamplerVariant kinds[6] = {
      SamplerVariant::o_lmc,      SamplerVariant::u_lmc,
      SamplerVariant::rcd_o_lmc,  SamplerVariant::rcd_u_lmc,
      SamplerVariant::rcad_o_lmc, SamplerVariant::rcad_u_lmc};
  for (const auto kind : kinds) {
    ChainConfig cfg;
    cfg.target = target;
    cfg.kind = {kind, GradMode::finite_difference};
    cfg.params = {1e-3, 1e-4, 1.0};
    cfg.steps = 1000;
    cfg.seed = 70007;
    const ChainOutput out = run_chain(cfg);
    const std::uint64_t expected =
        uses_rcd(kind) ? 1000u : (uses_rcad(kind) ? 1050u : 50000u);
    c.require(out.evals == expected,
              std::string(variant_name(kind)) + " evals == " +
                  std::to_string(expected) + " (got " +
                  std::to_string(out.evals) + ")");
  }
}

// ---------------------------------------------------------------------------
// 8. Byte-identical sweep output across reruns and thread counts 1 and 8.
// ---------------------------------------------------------------------------
void criterion_8(Check& c) {
  const std::string cfg_text = R"(target = gaussian
dim = 5
samplers = rcd_o_lmc, rcad_o_lmc
h = 0.01, 0.02
n_chains = 2000
steps = 150
seed = 42
init_mean = 0.5
)";
  const ParsedConfig pc = parse_config(cfg_text);
  const std::string csv_t1 = csv_string(run_sweep(pc.spec, 1));
  const std::string csv_t8 = csv_string(run_sweep(pc.spec, 8));
  const std::string csv_t8b = csv_string(run_sweep(pc.spec, 8));
  c.require(csv_t1 == csv_t8, "threads 1 and 8 produce identical bytes");
  c.require(csv_t8 == csv_t8b, "rerun produces identical bytes");
  c.note("csv size " + std::to_string(csv_t1.size()) + " bytes");
}

// ---------------------------------------------------------------------------
// 9. Convergence-rate surrogate: the analytic W2 trajectory of the
//    variance-reduced overdamped chain (from the exact moment recursion)
//    decays geometrically and its h -> 0 asymptote scales like O(h).
// ---------------------------------------------------------------------------
void criterion_9(Check& c) {
  const int d = 10;
  const InitMoments im{0.5, 1.0, 0.0, 1.0};
  std::vector<double> asymptotes;
  for (const double h : {1e-3, 5e-4, 2.5e-4}) {
    const int m_total = static_cast<int>(std::lround(20.0 / h));
    const MomentTrajectory tr = propagate_gaussian_moments(
        SamplerVariant::rcad_o_lmc, d, h, 1.0, im, m_total);
    const double w2_inf =
        w2_gaussian(tr.mean_x.back(), tr.var_x.back(), 0.0, 1.0, d);
    asymptotes.push_back(w2_inf);

    const int k0 = static_cast<int>(std::lround(1.0 / h));
    double prev_gap = -1.0;
    bool geometric = true;
    for (const int m : {k0, 2 * k0, 4 * k0}) {
      const auto mu = static_cast<std::size_t>(m);
      const double w2 = w2_gaussian(tr.mean_x[mu], tr.var_x[mu], 0.0, 1.0, d);
      const double gap = w2 - w2_inf;
      if (prev_gap > 0.0 && gap > 0.5 * prev_gap) geometric = false;
      prev_gap = gap;
    }
    c.note("h=" + fmt(h) + ": asymptotic W2 = " + fmt(w2_inf, 6));
    c.require(geometric,
              "W2 gap halves (at least) every 1/h steps at h=" + fmt(h));
  }
  for (std::size_t i = 0; i + 1 < asymptotes.size(); ++i) {
    const double ratio = asymptotes[i] / asymptotes[i + 1];
    c.note("asymptote ratio h=" + fmt(1e-3 * std::pow(0.5, i)) + " over next = " +
           fmt(ratio, 4));
    c.require(ratio >= 1.5 && ratio <= 2.5,
              "asymptotic W2 ratio in [1.5, 2.5] (got " + fmt(ratio, 4) + ")");
    c.require(asymptotes[i + 1] < asymptotes[i], "asymptote decreases with h");
  }
}

}  // namespace

int main(int argc, char** argv) {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Check&)> fn;
  };
  const std::vector<Entry> entries = {
      {1, "flux unbiasedness and variance identity", criterion_1},
      {2, "underdamped kernel moments", criterion_2},
      {3, "overdamped stationary variance oracle", criterion_3},
      {4, "gaussian moment-propagation equivalence", criterion_4},
      {5, "counter-example excess scaling", criterion_5},
      {6, "desk-scale stepsize sweep reproduction", criterion_6},
      {7, "cost accounting", criterion_7},
      {8, "determinism across threads and reruns", criterion_8},
      {9, "convergence-rate surrogate", criterion_9},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& e : entries) {
    if (!selected.empty() && !selected.count(e.id)) continue;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.fn(c);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.log << "    EXCEPTION: " << ex.what() << "\n";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << (c.ok ? "[PASS]" : "[FAIL]") << " criterion " << e.id << ": "
              << e.name << " (" << fmt(secs, 3) << " s)\n"
              << c.log.str();
    if (!c.ok) ++failures;
  }
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criterion(s) failed")
            << "\n";
  return failures;
}
