#ifndef RCLMC_VALIDATE_HPP
#define RCLMC_VALIDATE_HPP

#include <string>
#include <vector>

#include "rclmc/target.hpp"

namespace rclmc {

/// Time step h, finite-difference step eta, underdamped coupling gamma.
/// gamma is ignored by the overdamped kernels.
struct KernelParams {
  double h = 0.0;
  double eta = 0.0;
  double gamma = 1.0;

  bool positive() const { return h > 0.0 && eta > 0.0 && gamma > 0.0; }
};

struct ConditionCheck {
  std::string name;
  bool pass = false;
  bool indeterminate = false;  // cannot be decided numerically
  double value = 0.0;          // the quantity being checked
  double bound = 0.0;          // the binding bound
  std::string note;
};

/// Pass/fail per admissibility condition. When the target is not strongly
/// convex (mu == 0) the conditions cannot be evaluated; the run is still
/// permitted but theory_applicable is false.
struct AdmissibilityReport {
  bool theory_applicable = true;
  std::vector<ConditionCheck> checks;

  bool all_pass() const {
    if (!theory_applicable) return false;
    for (const auto& c : checks)
      if (!c.indeterminate && !c.pass) return false;
    return true;
  }
  std::string summary() const;
};

/// Overdamped admissibility: h < 1/(3(1+9d) kappa^2 mu) and eta < h,
/// both strict.
AdmissibilityReport validate_overdamped_params(const TargetModel& target,
                                               const KernelParams& params);

/// Underdamped admissibility: gamma = 1/L, h <= 1/(1648 kappa d), and
/// eta < h^3 (strict). The second h-branch of the theory involves an
/// unstated constant and is reported as indeterminate.
AdmissibilityReport validate_underdamped_params(const TargetModel& target,
                                                const KernelParams& params);

}  // namespace rclmc

#endif  // RCLMC_VALIDATE_HPP
