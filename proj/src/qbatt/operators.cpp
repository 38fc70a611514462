// operators.cpp — battery ladder, collective spin, and atom-cluster state.

#include "qbatt/operators.hpp"

#include <cmath>

#include "qbatt/errors.hpp"

namespace qbatt {

void validate(const battery_spec& b) {
  if (b.n_levels_top < 1)
    fail(status::invalid_argument, "n_levels_top must be >= 1");
  if (!(b.energy_spacing > 0))
    fail(status::invalid_argument, "energy_spacing must be > 0");
}

void validate(const atom_spec& a) {
  if (a.n_atoms < 1) fail(status::invalid_argument, "n_atoms must be >= 1");
  const double pi = 3.14159265358979323846;
  if (!(a.polar_angle >= 0 && a.polar_angle <= pi))
    fail(status::invalid_argument, "polar_angle must lie in [0, pi]");
  if (!std::isfinite(a.azimuthal_angle))
    fail(status::invalid_argument, "azimuthal_angle must be finite");
  if (!(a.coherence_factor >= 0 && a.coherence_factor <= 1))
    fail(status::invalid_argument, "coherence_factor must lie in [0, 1]");
}

Mat ladder_lower(int dim) {
  Mat b = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) b(n - 1, n) = 1.0;
  return b;
}

RVec level_numbers(int dim) {
  RVec n(dim);
  for (int i = 0; i < dim; ++i) n(i) = i;
  return n;
}

double spin_step_amplitude(int n_atoms, int a) {
  const double j = 0.5 * n_atoms;
  const double m = j - a;  // J- maps m -> m-1, i.e. a -> a+1
  return std::sqrt(j * (j + 1) - m * (m - 1));
}

spin_ops make_spin_ops(int n_atoms) {
  const int d = n_atoms + 1;
  const double j = 0.5 * n_atoms;
  spin_ops s{Mat::Zero(d, d), Mat::Zero(d, d), Mat::Zero(d, d)};
  for (int a = 0; a < d; ++a) s.jz(a, a) = j - a;
  for (int a = 0; a + 1 < d; ++a) {
    const double t = spin_step_amplitude(n_atoms, a);
    s.jm(a + 1, a) = t;  // lowers m: a -> a+1
    s.jp(a, a + 1) = t;  // J+ = (J-)^T here (real amplitudes)
  }
  return s;
}

Vec css_amplitudes(int n_atoms, double theta, double phi) {
  const int d = n_atoms + 1;
  const double co = std::cos(0.5 * theta);
  const double si = std::sin(0.5 * theta);
  Vec out(d);
  for (int a = 0; a < d; ++a) {
    // log sqrt(C(2j, a)) via lgamma keeps large N_A exact to double precision.
    const double lbinom = std::lgamma(n_atoms + 1.0) - std::lgamma(a + 1.0) -
                          std::lgamma(n_atoms - a + 1.0);
    double mag;
    if ((a > 0 && si == 0.0) || (a < n_atoms && co == 0.0)) {
      mag = 0.0;  // exact zero; keeps log() away from theta = 0 or pi
    } else {
      double lg = 0.5 * lbinom;
      if (a < n_atoms) lg += (n_atoms - a) * std::log(co);
      if (a > 0) lg += a * std::log(si);
      mag = std::exp(lg);
    }
    out(a) = std::polar(mag, a * phi);
  }
  return out;
}

Mat atom_state(const atom_spec& spec) {
  validate(spec);
  const Vec d = css_amplitudes(spec.n_atoms, spec.polar_angle,
                               spec.azimuthal_angle);
  const double c = spec.coherence_factor;
  Mat rho = c * (d * d.adjoint());
  rho.diagonal() += (1.0 - c) * d.cwiseAbs2().cast<cx>();
  return rho;
}

}  // namespace qbatt
