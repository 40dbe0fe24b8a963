#include "rclmc/sampler.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rclmc/grad.hpp"
#include "rclmc/kernels.hpp"
#include "rclmc/rng.hpp"

namespace rclmc {

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double partial(const TargetModel& t, std::span<double> x, int i, double eta,
               GradMode mode, EvalCounter& counter) {
  if (mode == GradMode::exact) {
    counter.add();
    return t.exact_partial(x, i);
  }
  return central_difference(t, x, i, eta, counter);
}

}  // namespace

ChainOutput run_chain(const ChainConfig& config) {
  if (!config.target) throw std::invalid_argument("run_chain: null target");
  const TargetModel& target = *config.target;
  if (target.dim < 1) throw std::invalid_argument("run_chain: dim must be >= 1");
  if (config.steps < 0) throw std::invalid_argument("run_chain: steps must be >= 0");
  if (!config.params.positive())
    throw std::invalid_argument("run_chain: h, eta, gamma must all be > 0");
  if (config.kind.mode == GradMode::exact && !target.has_exact_partial())
    throw std::invalid_argument(
        "run_chain: exact gradient mode requires exact_partial");

  const auto t0 = std::chrono::steady_clock::now();
  const int d = target.dim;
  const auto du = static_cast<std::size_t>(d);
  const SamplerVariant variant = config.kind.variant;
  const GradMode mode = config.kind.mode;
  const bool underdamped = is_underdamped(variant);
  const bool rcd = uses_rcd(variant);
  const bool rcad = uses_rcad(variant);
  const double h = config.params.h;
  const double eta = config.params.eta;

  ChainRng rng(config.seed);
  EvalCounter counter;

  ChainOutput out;
  out.x.resize(du);
  for (auto& xi : out.x) xi = config.init.mean_x + config.init.std_x * rng.normal();
  if (underdamped) {
    out.v.resize(du);
    for (auto& vi : out.v) vi = config.init.mean_v + config.init.std_v * rng.normal();
  }

  GradMemory mem;
  if (rcad) {
    mem.g.resize(du);
    for (int i = 0; i < d; ++i)
      mem.g[static_cast<std::size_t>(i)] = partial(target, out.x, i, eta, mode, counter);
    mem.evals = counter.evals;
  }

  UnderdampedCoeffs coeffs;
  if (underdamped) coeffs = underdamped_coeffs(h, config.params.gamma);

  std::vector<double> flux(du, 0.0);
  std::vector<double> noise(underdamped ? 2 * du : du);

  if (config.thin > 0) out.trajectory.push_back(out.x);

  UnderdampedState ustate;
  for (std::int64_t m = 0; m < config.steps; ++m) {
    if (rcd || rcad) {
      const int r = rng.uniform_index(d);
      if (rcd) {
        std::fill(flux.begin(), flux.end(), 0.0);
        flux[static_cast<std::size_t>(r)] =
            static_cast<double>(d) * partial(target, out.x, r, eta, mode, counter);
      } else {
        rcad_flux_inplace(target, mem, out.x, eta, r, flux,
                          mode == GradMode::exact);
        counter.add();
      }
    } else {
      for (int i = 0; i < d; ++i)
        flux[static_cast<std::size_t>(i)] = partial(target, out.x, i, eta, mode, counter);
    }

    for (auto& n : noise) n = rng.normal();

    if (underdamped) {
      ustate.x = std::move(out.x);
      ustate.v = std::move(out.v);
      underdamped_step(ustate, flux, coeffs, noise);
      out.x = std::move(ustate.x);
      out.v = std::move(ustate.v);
    } else {
      overdamped_step(out.x, flux, h, noise);
    }

    out.steps_done = m + 1;
    if (!all_finite(out.x) || (underdamped && !all_finite(out.v))) {
      out.diverged = true;
      break;
    }
    if (config.thin > 0 && (m + 1) % config.thin == 0)
      out.trajectory.push_back(out.x);
  }

  out.evals = counter.evals;
  if (rcad) out.final_memory = std::move(mem.g);
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

EnsembleResult run_ensemble(const ChainConfig& config, std::size_t n_chains,
                            int threads) {
  if (n_chains == 0)
    throw std::invalid_argument("run_ensemble: n_chains must be >= 1");

  unsigned n_workers = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::thread::hardware_concurrency();
  if (n_workers == 0) n_workers = 1;
  n_workers = std::min<unsigned>(n_workers, static_cast<unsigned>(n_chains));

  EnsembleResult result;
  result.chains.resize(n_chains);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n_chains) return;
      ChainConfig cfg = config;
      cfg.seed = chain_seed(config.seed, i);
      result.chains[i] = run_chain(cfg);
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& c : result.chains) {
    result.total_evals += c.evals;
    if (c.diverged) ++result.diverged_count;
  }
  return result;
}

}  // namespace rclmc
