// test_closed_form.cpp — drift parameters, prediction series, power laws.
//
// Frozen reference values come from an independent high-precision evaluation
// of the same closed forms (series/quadrature done in extended precision).

#include <cmath>
#include <complex>

#include "doctest.h"
#include "qbatt/closed_form.hpp"
#include "qbatt/errors.hpp"

using namespace qbatt;

namespace {
constexpr double kPi = 3.14159265358979323846;

atom_spec atoms(int na, double th, double phi, double c) {
  atom_spec a;
  a.n_atoms = na;
  a.polar_angle = th;
  a.azimuthal_angle = phi;
  a.coherence_factor = c;
  return a;
}
}  // namespace

TEST_CASE("compute_drift matches the frozen spot check") {
  // N_A = 4, theta = pi/2, phi = 0.3, c = 0.8, tau = 0.01.
  const drift_params d =
      compute_drift(atoms(4, kPi / 2, 0.3, 0.8), 0.01, 200, false);
  CHECK(std::abs(d.v) < 1e-19);  // cos(pi/2) under double rounding
  CHECK(std::abs(d.omega - 3.199786670933293e-02) < 1e-14);
  CHECK(std::abs(d.alpha - cx(4.728323306581433e-03, 1.528538382600970e-02)) <
        1e-14);
  CHECK(d.charging);
}

TEST_CASE("compute_drift reproduces textbook rates and k_estimate") {
  // N_A = 10, theta = pi/3, tau = pi/4: v = 2.5, Omega = c * 4.3301...
  const drift_params dc =
      compute_drift(atoms(10, kPi / 3, 0.0, 1.0), kPi / 4, 200, true);
  CHECK(dc.v == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(dc.omega == doctest::Approx(4.330127018922193).epsilon(1e-12));
  CHECK(dc.k_estimate == 30);  // ceil(200 / 6.8301)

  const drift_params di =
      compute_drift(atoms(10, kPi / 3, 0.0, 0.0), kPi / 4, 200, true);
  CHECK(di.omega == 0.0);
  CHECK(std::abs(di.alpha) == 0.0);
  CHECK(di.k_estimate == 80);  // ceil(200 / 2.5)

  // Slow-collision charge used by the prediction-accuracy checks.
  const drift_params ds =
      compute_drift(atoms(10, kPi / 3, 0.0, 1.0), 0.01, 200, true);
  CHECK(std::abs(ds.v - 4.999833335555540e-04) < 1e-16);
  CHECK(std::abs(ds.omega - 8.659676699122092e-02) < 1e-14);
  CHECK(std::abs(std::abs(ds.alpha) - 4.330127018922193e-02) < 1e-14);
  CHECK(ds.k_estimate == 2297);
}

TEST_CASE("compute_drift flags non-charging settings") {
  //  theta = pi: drift points down, no coherent component.
  CHECK_THROWS_AS(compute_drift(atoms(4, kPi, 0.0, 0.0), 0.5, 200, true),
                  error);
  const drift_params d =
      compute_drift(atoms(4, kPi, 0.0, 0.0), 0.5, 200, false);
  CHECK_FALSE(d.charging);
  CHECK(d.k_estimate == 0);
  try {
    compute_drift(atoms(4, kPi, 0.0, 0.0), 0.5, 200, true);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == status::non_charging);
  }
}

TEST_CASE("predict_series matches the frozen sequence") {
  // Same setting as the drift spot check; n_bar_0 = 0, beta_0 = 0.
  const drift_params d =
      compute_drift(atoms(4, kPi / 2, 0.3, 0.8), 0.01, 200, false);
  const prediction_series s = predict_series(d, 0.0, cx(0, 0), 7);
  CHECK(s.n_bar[0] == 0.0);
  CHECK(std::abs(s.n_bar[1]) < 1e-19);  // k v only, and v ~ 1e-20 here
  CHECK(std::abs(s.n_bar[2] - 5.12e-04) < 1e-15);  // 2|alpha|^2, w(0) = 1
  CHECK(std::abs(s.n_bar[3] - 1.535868941980178e-03) < 1e-15);
  CHECK(std::abs(s.n_bar[6] - 7.673452966276801e-03) < 1e-15);
  CHECK(s.beta[0] == cx(0, 0));
  CHECK(std::abs(s.beta[1] - (-d.alpha)) < 1e-17);  // beta_1 = -alpha w(0)^2
  CHECK(std::abs(s.beta[6] -
                 cx(-2.830349129258667e-02, -9.149749286837597e-02)) < 1e-15);
}

TEST_CASE("predict_series composes drift and coherent gain") {
  // Pure drift (c = 0): n_bar_k = n_bar_0 + k v, beta frozen at beta_0.
  const drift_params d = compute_drift(atoms(6, 0.4, 0.0, 0.0), 0.3, 50, true);
  const prediction_series s = predict_series(d, 2.0, cx(0.1, -0.2), 5);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(s.n_bar[k] - (2.0 + k * d.v)) < 1e-14);
    CHECK(s.beta[k] == cx(0.1, -0.2));
  }
  CHECK_THROWS_AS(predict_series(d, 0, cx(0, 0), 0), error);
}

TEST_CASE("charging_profile matches the frozen grid to 1e-7") {
  const struct {
    double x, f;
  } ref[] = {
      {0.25, 1.23711374686282e-01}, {0.5, 2.40004108648646e-01},
      {1.0, 4.28970528705373e-01},  {2.0, 6.19301703550674e-01},
      {5.0, 7.52023838704478e-01},  {10.0, 7.99623065794993e-01},
      {20.0, 8.24025253425754e-01}, {30.0, 8.32248124182247e-01},
      {40.0, 8.36376100520468e-01},
  };
  CHECK(charging_profile(0.0) == 0.0);
  double prev = 0.0;
  for (const auto& r : ref) {
    const double f = charging_profile(r.x);
    CHECK(std::abs(f - r.f) < 1e-7);
    CHECK(f > prev);  // monotone toward saturation
    prev = f;
  }
  const double lim = charging_profile_limit();
  CHECK(std::abs(lim - 8.0 / (3.0 * kPi)) < 1e-16);
  CHECK(prev < lim + 1e-6);
  // Tail law: limit - f(x) ~ 1/(2x).
  CHECK(std::abs((lim - charging_profile(30.0)) * 60.0 - 1.0) < 0.02);
}

TEST_CASE("scaled power laws and their optima") {
  const double tau0 = optimal_tau_incoherent();
  CHECK(std::abs(tau0 - 1.1655611852072114) < 1e-12);
  // Defining identity tau cot tau = 1/2.
  CHECK(std::abs(tau0 * std::cos(tau0) - 0.5 * std::sin(tau0)) < 1e-12);
  const double s0 = std::sin(tau0);
  CHECK(std::abs(s0 * s0 / tau0 - 0.7246113537767084) < 1e-12);
  CHECK(std::abs(incoherent_power_scaled(0.0, tau0) - 0.7246113537767084) <
        1e-12);

  // theta = pi/2 coherent law: sin(theta) f(k tau c j sin theta).
  CHECK(std::abs(coherent_power_scaled(kPi / 2, 1.0, 4, 15.0) -
                 8.32248124182247e-01) < 1e-6);  // x = 30
  CHECK(coherent_power_scaled(0.0, 1.0, 4, 15.0) == 0.0);

  bool unphys = true;
  CHECK(std::abs(power_bound_scaled(0.0, tau0, &unphys) -
                 0.7246113537767084) < 1e-12);
  CHECK_FALSE(unphys);
  power_bound_scaled(kPi / 2, 2.0, &unphys);  // sin(2 + pi/2) < 0
  CHECK(unphys);
}

TEST_CASE("ridge_tau matches the frozen maximizers") {
  CHECK(std::abs(ridge_tau(0.0) - 1.1655611792549) < 1e-5);
  CHECK(std::abs(ridge_tau(0.0) - optimal_tau_incoherent()) < 1e-5);
  CHECK(std::abs(ridge_tau(kPi / 8) - 0.8783622087839) < 1e-5);
  CHECK(std::abs(ridge_tau(kPi / 4) - 0.5875213079695) < 1e-5);
  CHECK(std::abs(ridge_tau(3 * kPi / 8) - 0.2943346528440) < 1e-5);
  CHECK_THROWS_AS(ridge_tau(kPi), error);
  CHECK_THROWS_AS(ridge_tau(-0.1), error);
}
