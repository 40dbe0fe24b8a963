#include "rclmc/validate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rclmc {

std::string AdmissibilityReport::summary() const {
  std::ostringstream os;
  if (!theory_applicable)
    os << "theory inapplicable (mu = 0); run permitted\n";
  for (const auto& c : checks) {
    os << "  " << c.name << ": "
       << (c.indeterminate ? "indeterminate" : (c.pass ? "pass" : "FAIL"))
       << " (value " << c.value << ", bound " << c.bound << ")";
    if (!c.note.empty()) os << " -- " << c.note;
    os << "\n";
  }
  return os.str();
}

static void require_params(const KernelParams& p) {
  if (!p.positive())
    throw std::invalid_argument("kernel params: h, eta, gamma must all be > 0");
}

static void require_target(const TargetModel& t) {
  if (t.dim < 1) throw std::invalid_argument("target: dim must be >= 1");
  if (t.mu > t.lip_grad)
    throw std::invalid_argument(
        "target: lip_grad must be >= mu (condition number >= 1)");
}

AdmissibilityReport validate_overdamped_params(const TargetModel& target,
                                               const KernelParams& params) {
  require_params(params);
  require_target(target);
  AdmissibilityReport rep;
  if (target.mu <= 0.0) {
    rep.theory_applicable = false;
    rep.checks.push_back({"strong convexity", false, true, target.mu, 0.0,
                          "mu = 0: conditions not evaluable"});
    return rep;
  }
  const double kappa = target.condition_number();
  const double h_bound =
      1.0 / (3.0 * (1.0 + 9.0 * target.dim) * kappa * kappa * target.mu);
  rep.checks.push_back({"h < 1/(3(1+9d) kappa^2 mu)", params.h < h_bound, false,
                        params.h, h_bound, ""});
  rep.checks.push_back(
      {"eta < h", params.eta < params.h, false, params.eta, params.h, ""});
  return rep;
}

AdmissibilityReport validate_underdamped_params(const TargetModel& target,
                                                const KernelParams& params) {
  require_params(params);
  require_target(target);
  AdmissibilityReport rep;
  if (target.mu <= 0.0) {
    rep.theory_applicable = false;
    rep.checks.push_back({"strong convexity", false, true, target.mu, 0.0,
                          "mu = 0: conditions not evaluable"});
    return rep;
  }
  const double kappa = target.condition_number();
  const double gamma_ref = 1.0 / target.lip_grad;
  const bool gamma_ok =
      std::fabs(params.gamma * target.lip_grad - 1.0) <= 1e-12;
  rep.checks.push_back(
      {"gamma = 1/L", gamma_ok, false, params.gamma, gamma_ref, ""});

  const double h_bound = 1.0 / (1648.0 * kappa * target.dim);
  rep.checks.push_back({"h <= 1/(1648 kappa d)", params.h <= h_bound, false,
                        params.h, h_bound, ""});

  const double h3 = params.h * params.h * params.h;
  rep.checks.push_back(
      {"eta < h^3", params.eta < h3, false, params.eta, h3, ""});

  rep.checks.push_back({"h <= 1/(100(1+D) kappa)", false, true, params.h, 0.0,
                        "constant D is not specified; unchecked"});
  return rep;
}

}  // namespace rclmc
