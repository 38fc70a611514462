// observables.hpp — battery density matrix and the scalars read off it.

#pragma once

#include <complex>
#include <cstdint>

#include "qbatt/operators.hpp"

namespace qbatt {

struct battery_state {
  battery_spec spec;
  Mat rho;

  int dim() const { return spec.dim(); }
};

// |initial_level><initial_level|.
battery_state make_level_state(const battery_spec& spec, int initial_level);

// Validates hermiticity (1e-11), unit trace (1e-10), and spectrum
// (eigenvalues >= -1e-9), all scaled by tol_scale.
battery_state make_state_from_matrix(const battery_spec& spec, const Mat& rho,
                                     double tol_scale = 1.0);

double mean_level(const battery_state& st);       // <n>
cx ladder_coherence(const battery_state& st);     // tr[rho B]
double purity(const battery_state& st);           // tr[rho^2]

// Ergotropy at unit level spacing: <n> minus the passive pairing of the
// spectrum of (rho + rho^+)/2 (eigenvalues descending onto levels ascending).
double ergotropy_levels(const battery_state& st);

// Smallest eigenvalue of the hermitized state (positivity checks).
double min_eigenvalue(const battery_state& st);

// rho <- D^+ rho D with D = exp(kappa B^+ - conj(kappa) B).
void displacement_evolve(battery_state& st, cx kappa);

}  // namespace qbatt
