#include "rclmc/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace rclmc {

UnderdampedCoeffs underdamped_coeffs(double h, double gamma) {
  if (h <= 0.0 || gamma <= 0.0)
    throw std::invalid_argument("underdamped_coeffs: h and gamma must be > 0");

  UnderdampedCoeffs k;
  k.h = h;
  k.gamma = gamma;
  const double u = -std::expm1(-2.0 * h);  // 1 - e^{-2h}
  k.exp2h = std::exp(-2.0 * h);
  k.vcoef = 0.5 * u;
  k.fcoef_x = 0.5 * gamma * (h - 0.5 * u);
  k.fcoef_v = 0.5 * gamma * u;

  // The u-form of cov_xx still cancels two O(h^2) quantities down to O(h^3);
  // its rounding error crosses the series truncation error near h = 1e-5.
  if (h < 1e-5) {
    k.cov_xx = gamma * h * h * h * (4.0 / 3.0 - 2.0 * h);
  } else {
    k.cov_xx = gamma * (h - 0.5 * u - 0.25 * u * u);
  }
  k.cov_vv = gamma * (-std::expm1(-4.0 * h));
  k.cov_xv = 0.5 * gamma * u * u;

  // closed-form lower-triangular square root of [[cov_xx, cov_xv],
  // [cov_xv, cov_vv]], with the degenerate branch for cov_xx -> 0
  if (k.cov_xx > 0.0) {
    const double det = k.cov_xx * k.cov_vv - k.cov_xv * k.cov_xv;
    if (det < -1e-15)
      throw std::runtime_error(
          "underdamped transition covariance is indefinite (det = " +
          std::to_string(det) + ")");
    k.chol_a = std::sqrt(k.cov_xx);
    k.chol_b = k.cov_xv / k.chol_a;
    const double rem = k.cov_vv - k.chol_b * k.chol_b;
    k.chol_c = rem > 0.0 ? std::sqrt(rem) : 0.0;
  } else {
    k.chol_a = 0.0;
    k.chol_b = 0.0;
    k.chol_c = std::sqrt(k.cov_vv);
  }
  return k;
}

UnderdampedMoments underdamped_moments(const UnderdampedState& state,
                                       std::span<const double> flux, double h,
                                       double gamma) {
  const UnderdampedCoeffs k = underdamped_coeffs(h, gamma);
  const std::size_t d = state.x.size();
  UnderdampedMoments m;
  m.mean_x.resize(d);
  m.mean_v.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    m.mean_x[i] = state.x[i] + k.vcoef * state.v[i] - k.fcoef_x * flux[i];
    m.mean_v[i] = k.exp2h * state.v[i] - k.fcoef_v * flux[i];
  }
  m.cov_xx = k.cov_xx;
  m.cov_vv = k.cov_vv;
  m.cov_xv = k.cov_xv;
  return m;
}

void overdamped_step(std::span<double> x, std::span<const double> flux, double h,
                     std::span<const double> noise) {
  const double s = std::sqrt(2.0 * h);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = x[i] - h * flux[i] + s * noise[i];
}

void underdamped_step(UnderdampedState& state, std::span<const double> flux,
                      const UnderdampedCoeffs& k, std::span<const double> noise) {
  const std::size_t d = state.x.size();
  for (std::size_t i = 0; i < d; ++i) {
    const double mx = state.x[i] + k.vcoef * state.v[i] - k.fcoef_x * flux[i];
    const double mv = k.exp2h * state.v[i] - k.fcoef_v * flux[i];
    const double nx = noise[i];
    const double nv = noise[d + i];
    state.x[i] = mx + k.chol_a * nx;
    state.v[i] = mv + k.chol_b * nx + k.chol_c * nv;
  }
}

}  // namespace rclmc
