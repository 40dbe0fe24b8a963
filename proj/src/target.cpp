#include "rclmc/target.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rclmc {

TargetModel make_gaussian_target(int dim, double mean, double sigma2) {
  if (dim < 1) throw std::invalid_argument("gaussian target: dim must be >= 1");
  if (sigma2 <= 0.0) throw std::invalid_argument("gaussian target: sigma2 must be > 0");

  TargetModel t;
  t.dim = dim;
  t.mu = 1.0 / sigma2;
  t.lip_grad = 1.0 / sigma2;
  t.lip_hess = 0.0;
  t.name = "gaussian";
  t.ref_x1_sq = sigma2 + mean * mean;

  const double inv_s2 = 1.0 / sigma2;
  t.potential = [mean, inv_s2](std::span<const double> x) {
    double q = 0.0;
    for (double xi : x) {
      const double r = xi - mean;
      q += r * r;
    }
    return 0.5 * q * inv_s2;
  };
  t.exact_partial = [mean, inv_s2](std::span<const double> x, int i) {
    return (x[static_cast<std::size_t>(i)] - mean) * inv_s2;
  };
  return t;
}

TargetModel make_mixture_target(int dim, double c) {
  if (dim < 1) throw std::invalid_argument("mixture target: dim must be >= 1");
  if (c <= 0.0) throw std::invalid_argument("mixture target: c must be > 0");

  TargetModel t;
  t.dim = dim;
  t.mu = 0.0;  // two separated modes: not strongly convex
  t.lip_grad = std::max(1.0, c * c * dim - 1.0);
  t.name = "mixture";
  t.ref_x1_sq = c * c + 1.0;  // marginal of x_1 is an equal mix of N(+-c, 1)

  const double half_c2d = 0.5 * c * c * dim;
  t.potential = [c, half_c2d](std::span<const double> x) {
    double q = 0.0, s = 0.0;
    for (double xi : x) {
      q += xi * xi;
      s += xi;
    }
    // log(2 cosh(z)) = |z| + log1p(exp(-2|z|)), no overflow
    const double z = std::fabs(c * s);
    return 0.5 * q + half_c2d - (z + std::log1p(std::exp(-2.0 * z)));
  };
  t.exact_partial = [c](std::span<const double> x, int i) {
    double s = 0.0;
    for (double xj : x) s += xj;
    return x[static_cast<std::size_t>(i)] - c * std::tanh(c * s);
  };
  return t;
}

}  // namespace rclmc
