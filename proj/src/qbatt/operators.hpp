// operators.hpp — battery ladder, collective spin, and atom-cluster state.
//
// Conventions pinned here and relied on everywhere else:
//   * battery basis |0>..|N_B| ascending; B = sum_n |n-1><n| lowers a level;
//     [B, B+] = |0><0| - |N_B><N_B| (edge defect of the finite ladder);
//   * spin basis |j, m> ordered m = j..-j descending, indexed by the lowering
//     count a = j - m in 0..2j;
//   * joint index = a * (N_B + 1) + n  (battery fastest).

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qbatt {

using cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct battery_spec {
  int n_levels_top = 1;       // N_B
  double energy_spacing = 1;  // epsilon
  int dim() const { return n_levels_top + 1; }
};

struct atom_spec {
  int n_atoms = 1;            // N_A; collective spin j = N_A / 2
  double polar_angle = 0;     // theta_0
  double azimuthal_angle = 0; // phi_0
  double coherence_factor = 1;
  int dim() const { return n_atoms + 1; }
  double j() const { return 0.5 * n_atoms; }
};

void validate(const battery_spec& b);
void validate(const atom_spec& a);

// Ladder-lowering matrix B (dim x dim).
Mat ladder_lower(int dim);

// Level-number diagonal n = diag(0..dim-1).
RVec level_numbers(int dim);

// Collective-spin matrices in the a = j - m ordering (dimension 2j+1).
// jp = J+ raises m (moves a -> a-1), jm = J- lowers m (a -> a+1),
// jz = diag(m).
struct spin_ops {
  Mat jp, jm, jz;
};
spin_ops make_spin_ops(int n_atoms);

// Spin-coupling amplitude t_a = sqrt(j(j+1) - m(m-1)) for the J- step
// a -> a+1 (m = j - a), the only matrix element the collision uses.
double spin_step_amplitude(int n_atoms, int a);

// Spin-coherent-state amplitudes d_a over a = 0..2j for the cluster state
// with polar angle theta and azimuth phi:
//   d_a = sqrt(C(2j, a)) cos^{2j-a}(theta/2) sin^a(theta/2) e^{+i a phi}
// (each lowering from |j, j> contributes sin(theta/2) e^{+i phi}; this makes
// <J-> = j sin(theta) e^{-i phi}).
Vec css_amplitudes(int n_atoms, double theta, double phi);

// Cluster density matrix rho_A = c |d><d| + (1 - c) diag(|d|^2).
Mat atom_state(const atom_spec& a);

}  // namespace qbatt
