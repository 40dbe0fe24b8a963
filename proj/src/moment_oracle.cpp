#include "rclmc/moment_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rclmc/kernels.hpp"

namespace rclmc {

namespace {

// 3x3 state (x, v, g); unused components carry zeros.
struct Mat3 {
  double m[3][3] = {};
};

Mat3 matmul(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

Mat3 congruence(const Mat3& t, const Mat3& s) {  // T S T'
  Mat3 ts = matmul(t, s);
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += ts.m[i][k] * t.m[j][k];
      r.m[i][j] = acc;
    }
  return r;
}

struct Recursion {
  // up to two branches: selected-coordinate (prob 1/d) and the rest
  int nbranches = 1;
  double prob[2] = {1.0, 0.0};
  Mat3 T[2];
  Mat3 C;  // additive noise second moments
};

Recursion build(SamplerVariant kind, int d, double h, double gamma) {
  Recursion rec;
  const double dd = static_cast<double>(d);
  const double p = 1.0 / dd;

  if (!is_underdamped(kind)) {
    rec.C.m[0][0] = 2.0 * h;
    switch (kind) {
      case SamplerVariant::o_lmc:
        rec.nbranches = 1;
        rec.prob[0] = 1.0;
        rec.T[0].m[0][0] = 1.0 - h;
        break;
      case SamplerVariant::rcd_o_lmc:
        rec.nbranches = 2;
        rec.prob[0] = p;
        rec.prob[1] = 1.0 - p;
        rec.T[0].m[0][0] = 1.0 - h * dd;  // selected: flux = d x
        rec.T[1].m[0][0] = 1.0;           // unselected: flux = 0
        break;
      case SamplerVariant::rcad_o_lmc:
        rec.nbranches = 2;
        rec.prob[0] = p;
        rec.prob[1] = 1.0 - p;
        // selected: x' = (1 - hd) x + h(d-1) g, g' = x
        rec.T[0].m[0][0] = 1.0 - h * dd;
        rec.T[0].m[0][2] = h * (dd - 1.0);
        rec.T[0].m[2][0] = 1.0;
        // unselected: x' = x - h g, g' = g
        rec.T[1].m[0][0] = 1.0;
        rec.T[1].m[0][2] = -h;
        rec.T[1].m[2][2] = 1.0;
        break;
      default:
        throw std::logic_error("unreachable");
    }
    return rec;
  }

  const UnderdampedCoeffs k = underdamped_coeffs(h, gamma);
  rec.C.m[0][0] = k.cov_xx;
  rec.C.m[1][1] = k.cov_vv;
  rec.C.m[0][1] = rec.C.m[1][0] = k.cov_xv;

  auto exact_rows = [&](Mat3& t, double flux_x_weight, double flux_g_weight) {
    // x' = x + vcoef v - fcoef_x (wx * x + wg * g), similarly v'
    t.m[0][0] = 1.0 - k.fcoef_x * flux_x_weight;
    t.m[0][1] = k.vcoef;
    t.m[0][2] = -k.fcoef_x * flux_g_weight;
    t.m[1][0] = -k.fcoef_v * flux_x_weight;
    t.m[1][1] = k.exp2h;
    t.m[1][2] = -k.fcoef_v * flux_g_weight;
  };

  switch (kind) {
    case SamplerVariant::u_lmc:
      rec.nbranches = 1;
      rec.prob[0] = 1.0;
      exact_rows(rec.T[0], 1.0, 0.0);  // flux = grad f = x
      break;
    case SamplerVariant::rcd_u_lmc:
      rec.nbranches = 2;
      rec.prob[0] = p;
      rec.prob[1] = 1.0 - p;
      exact_rows(rec.T[0], dd, 0.0);  // selected: flux = d x
      exact_rows(rec.T[1], 0.0, 0.0);
      break;
    case SamplerVariant::rcad_u_lmc:
      rec.nbranches = 2;
      rec.prob[0] = p;
      rec.prob[1] = 1.0 - p;
      exact_rows(rec.T[0], dd, -(dd - 1.0));  // flux = d x - (d-1) g
      rec.T[0].m[2][0] = 1.0;                 // g' = x
      exact_rows(rec.T[1], 0.0, 1.0);         // flux = g
      rec.T[1].m[2][2] = 1.0;                 // g' = g
      break;
    default:
      throw std::logic_error("unreachable");
  }
  return rec;
}

struct State {
  Mat3 S;            // raw second moments of (x, v, g), per coordinate
  double mean[3] = {};

  void step(const Recursion& rec) {
    Mat3 next;
    for (int b = 0; b < rec.nbranches; ++b) {
      const Mat3 c = congruence(rec.T[b], S);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) next.m[i][j] += rec.prob[b] * c.m[i][j];
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) next.m[i][j] += rec.C.m[i][j];

    double nm[3] = {};
    for (int b = 0; b < rec.nbranches; ++b)
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          nm[i] += rec.prob[b] * rec.T[b].m[i][k] * mean[k];

    S = next;
    for (int i = 0; i < 3; ++i) mean[i] = nm[i];
  }
};

State initial_state(SamplerVariant kind, const InitMoments& init) {
  State st;
  const double sxx = init.var_x + init.mean_x * init.mean_x;
  st.S.m[0][0] = sxx;
  st.mean[0] = init.mean_x;
  if (is_underdamped(kind)) {
    st.S.m[1][1] = init.var_v + init.mean_v * init.mean_v;
    st.S.m[0][1] = st.S.m[1][0] = init.mean_x * init.mean_v;  // independent draw
    st.mean[1] = init.mean_v;
  }
  if (uses_rcad(kind)) {
    // g0 = grad f(x0) = x0 exactly on the quadratic target
    st.S.m[2][2] = sxx;
    st.S.m[0][2] = st.S.m[2][0] = sxx;
    st.S.m[1][2] = st.S.m[2][1] = st.S.m[0][1];
    st.mean[2] = init.mean_x;
  }
  return st;
}

void validate_args(int d, double h, double gamma, int steps) {
  if (d < 1) throw std::invalid_argument("moment oracle: d must be >= 1");
  if (h <= 0.0) throw std::invalid_argument("moment oracle: h must be > 0");
  if (gamma <= 0.0) throw std::invalid_argument("moment oracle: gamma must be > 0");
  if (steps < 0) throw std::invalid_argument("moment oracle: steps must be >= 0");
}

}  // namespace

MomentTrajectory propagate_gaussian_moments(SamplerVariant kind, int d, double h,
                                            double gamma, const InitMoments& init,
                                            int steps) {
  validate_args(d, h, gamma, steps);
  const Recursion rec = build(kind, d, h, gamma);
  State st = initial_state(kind, init);
  const double dd = static_cast<double>(d);

  MomentTrajectory out;
  out.d = d;
  out.underdamped = is_underdamped(kind);
  out.ex2.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&] {
    out.ex2.push_back(dd * st.S.m[0][0]);
    out.mean_x.push_back(st.mean[0]);
    out.var_x.push_back(st.S.m[0][0] - st.mean[0] * st.mean[0]);
    if (out.underdamped) {
      out.ev2.push_back(dd * st.S.m[1][1]);
      out.ew2.push_back(dd *
                        (st.S.m[0][0] + 2.0 * st.S.m[0][1] + st.S.m[1][1]));
    } else {
      out.ev2.push_back(0.0);
      out.ew2.push_back(0.0);
    }
  };
  record();
  for (int m = 0; m < steps; ++m) {
    st.step(rec);
    record();
  }
  return out;
}

MomentTrajectory propagate_gaussian_moments(const TargetModel& target,
                                            SamplerVariant kind, double h,
                                            double gamma, const InitMoments& init,
                                            int steps) {
  const bool standard_gaussian = target.name == "gaussian" &&
                                 target.mu == 1.0 && target.lip_grad == 1.0 &&
                                 target.ref_x1_sq == 1.0;
  if (!standard_gaussian)
    throw std::invalid_argument(
        "moment oracle requires the standard Gaussian target");
  return propagate_gaussian_moments(kind, target.dim, h, gamma, init, steps);
}

namespace {

bool trailing_window_flat(const std::vector<double>& traj, double rel_tol) {
  if (traj.size() < 20) return false;
  const std::size_t n = traj.size();
  const std::size_t from = n - std::max<std::size_t>(n / 10, 2);
  double lo = traj[from], hi = traj[from];
  for (std::size_t i = from; i < n; ++i) {
    lo = std::min(lo, traj[i]);
    hi = std::max(hi, traj[i]);
  }
  const double ref = std::fabs(traj[n - 1]);
  if (ref == 0.0) return hi - lo == 0.0;
  return (hi - lo) / ref < rel_tol;
}

}  // namespace

bool trajectory_plateaued(const std::vector<double>& traj) {
  return trailing_window_flat(traj, 0.01);
}

PlateauSearch oracle_steps_to_plateau(SamplerVariant kind, int d, double h,
                                      double gamma, const InitMoments& init,
                                      MomentObservable obs, int cap,
                                      double rel_tol) {
  validate_args(d, h, gamma, 0);
  if (cap < 1) throw std::invalid_argument("plateau search: cap must be >= 1");
  if (rel_tol <= 0.0)
    throw std::invalid_argument("plateau search: rel_tol must be > 0");
  if (obs == MomentObservable::w_sq && !is_underdamped(kind))
    throw std::invalid_argument("w_sq observable needs an underdamped kind");

  const Recursion rec = build(kind, d, h, gamma);
  State st = initial_state(kind, init);
  const double dd = static_cast<double>(d);

  PlateauSearch res;
  auto value = [&] {
    if (obs == MomentObservable::x_sq) return dd * st.S.m[0][0];
    return dd * (st.S.m[0][0] + 2.0 * st.S.m[0][1] + st.S.m[1][1]);
  };
  res.trajectory.push_back(value());
  const int check_every = 50;
  for (int m = 1; m <= cap; ++m) {
    st.step(rec);
    res.trajectory.push_back(value());
    if (m % check_every == 0 && trailing_window_flat(res.trajectory, rel_tol)) {
      res.steps = m;
      res.plateaued = true;
      return res;
    }
  }
  res.steps = cap;
  res.plateaued = trailing_window_flat(res.trajectory, rel_tol);
  return res;
}

}  // namespace rclmc
