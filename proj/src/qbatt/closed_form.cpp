// closed_form.cpp — analytic charging laws of the collision model.

#include "qbatt/closed_form.hpp"

#include <cmath>

#include "qbatt/errors.hpp"
#include "qbatt/special.hpp"

namespace qbatt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

drift_params compute_drift(const atom_spec& atoms, double tau,
                           int n_levels_top, bool require_charging) {
  validate(atoms);
  if (!(tau > 0)) fail(status::invalid_argument, "tau must be > 0");
  if (n_levels_top < 1)
    fail(status::invalid_argument, "n_levels_top must be >= 1");

  const double j = atoms.j();
  const double th = atoms.polar_angle;
  const double c = atoms.coherence_factor;
  const double s = std::sin(tau);

  drift_params d;
  d.v = 2.0 * j * std::cos(th) * s * s;
  d.omega = c * j * std::sin(th) * std::sin(2.0 * tau);
  d.alpha = cx(0.0, tau * c * j * std::sin(th)) *
            std::exp(cx(0.0, -atoms.azimuthal_angle));
  const double speed = d.v + d.omega;
  d.charging = speed > 0;
  if (d.charging)
    d.k_estimate =
        static_cast<std::int64_t>(std::ceil(n_levels_top / speed));
  else if (require_charging)
    fail(status::non_charging,
         "drift plus coherent speed is not positive: no charging at this "
         "setting");
  return d;
}

prediction_series predict_series(const drift_params& d, double n_bar_0,
                                 cx beta_0, std::int64_t count) {
  if (count < 1) fail(status::zero_steps, "prediction count must be >= 1");
  const double aa = std::abs(d.alpha);
  prediction_series out;
  out.n_bar.resize(count);
  out.beta.resize(count);

  // w(k)^2 with w(k) = J1(2 k |alpha|)/(k |alpha|), w(0) = 1 by the limit.
  std::vector<double> w2(count);
  for (std::int64_t k = 0; k < count; ++k) {
    const double w = vacuum_overlap(k * aa);
    w2[k] = w * w;
  }

  // Running sums give O(count) evaluation:
  //   S_k = sum_{k'<k} w(k')^2,  T_k = sum_{k'<=k-2} (k-1-k') w(k')^2,
  //   T_{k+1} = T_k + S_k  (every earlier kick gains one more step of drift).
  double s_run = 0.0, t_run = 0.0;
  for (std::int64_t k = 0; k < count; ++k) {
    out.beta[k] = beta_0 - d.alpha * s_run;
    out.n_bar[k] = n_bar_0 + static_cast<double>(k) * d.v +
                   2.0 * aa * aa * t_run;
    t_run += s_run;
    s_run += w2[k];
  }
  return out;
}

double charging_profile(double x) {
  if (!(x > 0)) return 0.0;
  auto integrand = [x](double u) {
    const double w = vacuum_overlap(u);  // J1(2u)/u, limit 1 at u = 0
    return (1.0 - u / x) * w * w;
  };
  return integrate_gk(integrand, 0.0, x, 1e-9);
}

double charging_profile_limit() { return 8.0 / (3.0 * kPi); }

double coherent_power_scaled(double theta, double c, int n_atoms,
                             double k_tau) {
  const double x = k_tau * c * 0.5 * n_atoms * std::sin(theta);
  return std::sin(theta) * charging_profile(x);
}

double incoherent_power_scaled(double theta, double tau) {
  const double s = std::sin(tau);
  return std::cos(theta) * s * s / tau;
}

double power_bound_scaled(double theta, double tau, bool* unphysical) {
  const double b = std::sin(tau) / tau * std::sin(tau + theta);
  if (unphysical) *unphysical = b < 0;
  return b;
}

double optimal_tau_incoherent() {
  // Bisection on h(t) = t cos t - 0.5 sin t; h(0+) > 0, h(pi/2) < 0.
  auto h = [](double t) { return t * std::cos(t) - 0.5 * std::sin(t); };
  double lo = 0.5, hi = 1.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0 ? lo : hi) = mid;
    if (hi - lo < 1e-14) break;
  }
  return 0.5 * (lo + hi);
}

double ridge_tau(double theta) {
  if (!(theta >= 0 && theta < kPi))
    fail(status::invalid_argument, "ridge_tau: theta must lie in [0, pi)");
  // Golden-section maximization of sin(t) sin(t+theta)/t on (0, pi - theta).
  auto g = [theta](double t) {
    return std::sin(t) * std::sin(t + theta) / t;
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 1e-9, b = kPi - theta - 1e-9;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double g1 = g(x1), g2 = g(x2);
  while (b - a > 1e-12) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + gr * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - gr * (b - a);
      g1 = g(x1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace qbatt
