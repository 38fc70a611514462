// closed_form.hpp — analytic charging laws of the collision model.
//
// Far from the ladder edges the battery behaves like a half-infinite ladder:
// each collision adds an incoherent drift v and a coherent kick of amplitude
// alpha whose vacuum-overlap factor w(k) = J1(2k|alpha|)/(k|alpha|) decays as
// the state spreads. Everything here follows from those two ingredients.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qbatt/operators.hpp"

namespace qbatt {

struct drift_params {
  double v = 0;             // incoherent gain/step: 2 j cos(theta) sin^2(tau)
  double omega = 0;         // coherent gain scale:  c j sin(theta) sin(2 tau)
  cx alpha{0, 0};           // kick amplitude: i tau c j sin(theta) e^{-i phi}
  std::int64_t k_estimate = 0;  // ceil(N_B / (v + omega)); 0 if non-charging
  bool charging = false;    // v + omega > 0
};

// Rate parameters for a collision setting. Throws non_charging only when the
// caller asks (require_charging) and v + omega <= 0.
drift_params compute_drift(const atom_spec& atoms, double tau,
                           int n_levels_top, bool require_charging);

// Discrete charging predictions for k = 0..count-1:
//   beta_k  = beta_0 - alpha * sum_{k'<k} w(k')^2
//   n_bar_k = n_bar_0 + k v + 2 |alpha|^2 sum_{k'<=k-2} (k-1-k') w(k')^2
// (w(0) = 1; exact in each pure protocol limit, superposed in between).
struct prediction_series {
  std::vector<double> n_bar;
  std::vector<cx> beta;
};
prediction_series predict_series(const drift_params& d, double n_bar_0,
                                 cx beta_0, std::int64_t count);

// Coherent charging front profile
//   f(x) = (1/x) int_0^x (x-u) [J1(2u)/u]^2 du,  f(0) = 0,  f(inf) = 8/(3pi);
// absolute quadrature error <= 1e-8.
double charging_profile(double x);
double charging_profile_limit();  // 8 / (3 pi)

// Scaled powers P / (g epsilon N_A).
double coherent_power_scaled(double theta, double c, int n_atoms,
                             double k_tau);
double incoherent_power_scaled(double theta, double tau);

// Short-time bound (sin(tau)/tau) sin(tau + theta); negative => unphysical.
double power_bound_scaled(double theta, double tau, bool* unphysical);

// Root of tau cot(tau) = 1/2 in (0, pi): maximizes sin^2(tau)/tau.
double optimal_tau_incoherent();

// tau maximizing the short-time bound at fixed theta (golden-section search
// over (0, pi - theta)); equals optimal_tau_incoherent() at theta = 0.
double ridge_tau(double theta);

}  // namespace qbatt
