#ifndef RCLMC_TARGET_HPP
#define RCLMC_TARGET_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>

namespace rclmc {

/*
 * A target distribution p(x) proportional to exp(-f(x)), carried as the
 * potential f together with its regularity constants.
 *
 * mu and lip_grad are supplied by the constructors for the analytic targets
 * and must be user-provided for custom ones; they are never estimated.
 * mu == 0 means "not strongly convex" and downgrades the admissibility
 * checks to a warning.
 */
struct TargetModel {
  int dim = 0;
  std::function<double(std::span<const double>)> potential;
  // partial derivative of f in coordinate i; empty when only f is known
  std::function<double(std::span<const double>, int)> exact_partial;
  double mu = 0.0;
  double lip_grad = 1.0;
  std::optional<double> lip_hess;

  std::string name;        // "gaussian", "mixture", or caller-chosen
  double ref_x1_sq = 0.0;  // analytic E_p |x_1|^2, used as sweep reference

  bool has_exact_partial() const { return static_cast<bool>(exact_partial); }
  double condition_number() const { return mu > 0.0 ? lip_grad / mu : 0.0; }
};

/// Isotropic Gaussian N(mean * 1, sigma2 * I_d):
/// f(x) = |x - mean|^2 / (2 sigma2), mu = L = 1/sigma2, H = 0.
TargetModel make_gaussian_target(int dim, double mean = 0.0, double sigma2 = 1.0);

/// Symmetric two-component Gaussian mixture with modes at +-c * 1 and unit
/// component covariance:
///   f(x) = -log[ exp(-|x - c 1|^2 / 2) + exp(-|x + c 1|^2 / 2) ].
/// Evaluated through the collapsed form
///   f(x) = |x|^2/2 + c^2 d/2 - log(2 cosh(c s)),  s = sum_i x_i,
/// which is stable for arbitrarily large |x|. Not log-concave for c >= 1,
/// so mu is recorded as 0; L = max(1, c^2 d - 1) from the rank-one Hessian
/// correction.
TargetModel make_mixture_target(int dim, double c = 2.0);

}  // namespace rclmc

#endif  // RCLMC_TARGET_HPP
