#include "rclmc/grad.hpp"

#include <stdexcept>

namespace rclmc {

double central_difference(const TargetModel& target, std::span<double> x, int i,
                          double eta, EvalCounter& counter) {
  const auto idx = static_cast<std::size_t>(i);
  const double xi = x[idx];
  x[idx] = xi + eta;
  const double fp = target.potential(x);
  x[idx] = xi - eta;
  const double fm = target.potential(x);
  x[idx] = xi;
  counter.add();
  return (fp - fm) / (2.0 * eta);
}

void full_gradient_fd(const TargetModel& target, std::span<double> x, double eta,
                      std::span<double> grad_out, EvalCounter& counter) {
  for (int i = 0; i < target.dim; ++i)
    grad_out[static_cast<std::size_t>(i)] =
        central_difference(target, x, i, eta, counter);
}

std::vector<double> full_gradient_fd(const TargetModel& target,
                                     std::span<double> x, double eta,
                                     EvalCounter& counter) {
  std::vector<double> g(static_cast<std::size_t>(target.dim));
  full_gradient_fd(target, x, eta, g, counter);
  return g;
}

std::vector<double> rcd_estimate(const TargetModel& target, std::span<double> x,
                                 double eta, int r, EvalCounter& counter) {
  std::vector<double> est(static_cast<std::size_t>(target.dim), 0.0);
  est[static_cast<std::size_t>(r)] =
      static_cast<double>(target.dim) *
      central_difference(target, x, r, eta, counter);
  return est;
}

GradMemory rcad_init(const TargetModel& target, std::span<double> x0, double eta) {
  GradMemory mem;
  EvalCounter c;
  mem.g = full_gradient_fd(target, x0, eta, c);
  mem.evals = c.evals;
  return mem;
}

static double fresh_partial(const TargetModel& target, std::span<double> x,
                            double eta, int r, bool exact) {
  if (exact) {
    if (!target.has_exact_partial())
      throw std::invalid_argument("exact gradient mode requires exact_partial");
    return target.exact_partial(x, r);
  }
  EvalCounter scratch;
  return central_difference(target, x, r, eta, scratch);
}

void rcad_flux_inplace(const TargetModel& target, GradMemory& mem,
                       std::span<double> x, double eta, int r,
                       std::span<double> flux_out, bool exact) {
  const auto d = static_cast<double>(target.dim);
  const auto ri = static_cast<std::size_t>(r);
  const double fresh = fresh_partial(target, x, eta, r, exact);
  for (std::size_t i = 0; i < mem.g.size(); ++i) flux_out[i] = mem.g[i];
  // F[r] = g[r] + d (fresh - g[r]); written as d*fresh - (d-1)*g[r] so the
  // d = 1 case collapses to the plain partial bit-exactly.
  flux_out[ri] = d * fresh - (d - 1.0) * mem.g[ri];
  mem.g[ri] = fresh;
  mem.evals += 1;
}

FluxResult rcad_flux(const TargetModel& target, const GradMemory& mem,
                     std::span<double> x, double eta, int r, bool exact) {
  FluxResult out;
  out.r = r;
  out.memory = mem;
  out.flux.resize(mem.g.size());
  rcad_flux_inplace(target, out.memory, x, eta, r, out.flux, exact);
  return out;
}

double rcad_error_variance_enumerated(const TargetModel& target,
                                      const GradMemory& mem,
                                      std::span<const double> x) {
  if (!target.has_exact_partial())
    throw std::invalid_argument(
        "rcad_error_variance_enumerated requires exact_partial");
  const int d = target.dim;
  std::vector<double> grad(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i)
    grad[static_cast<std::size_t>(i)] = target.exact_partial(x, i);

  double acc = 0.0;
  for (int r = 0; r < d; ++r) {
    // F(r) agrees with g off r; the error only changes in coordinate r.
    double sq = 0.0;
    for (int i = 0; i < d; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      double fi = mem.g[ii];
      if (i == r)
        fi = static_cast<double>(d) * grad[ii] -
             (static_cast<double>(d) - 1.0) * mem.g[ii];
      const double e = grad[ii] - fi;
      sq += e * e;
    }
    acc += sq;
  }
  return acc / static_cast<double>(d);
}

}  // namespace rclmc
