// channel.hpp — the one-collision quantum channel in banded Kraus form.
//
// The collision unitary U = exp[-i tau (J+ B + J- B+)] conserves s = n - a
// (battery level minus spin lowering count), so it block-diagonalizes into
// real-symmetric tridiagonal chains, one per s, with couplings
// t_a = sqrt(j(j+1) - m(m-1)), m = j - a, linking (a, n) to (a+1, n+1).
// Tracing out the atoms after one collision gives Kraus operators
//   K_{a',i}[n + delta, n] = sqrt(p_i) chi_i[a] U_{s=n-a}[a', a],
// delta = a' - a, one per (atom eigenvector chi_i, exit row a'). Each is
// banded with at most 2j+1 diagonals, which keeps a collision at
// O((2j+1)^2 d_B^2) instead of the dense-joint O(d^3).

#pragma once

#include <cstdint>
#include <vector>

#include "qbatt/closed_form.hpp"
#include "qbatt/operators.hpp"

namespace qbatt {

// One banded operator as a list of diagonals: diag(d) holds coef[n] of
// |n + offset(d)><n|, nonzero only for n in [lo(d), hi(d)].
struct banded_op {
  struct diag {
    int offset;
    int lo, hi;  // inclusive n-range
    Vec coef;    // full battery length; zero outside [lo, hi]
  };
  std::vector<diag> diags;
};

class collision_channel {
 public:
  // tol_scale multiplies every built-in numerical tolerance.
  collision_channel(const battery_spec& battery, const atom_spec& atoms,
                    double tau, double tol_scale = 1.0);

  const battery_spec& battery() const { return battery_; }
  const atom_spec& atoms() const { return atoms_; }
  double tau() const { return tau_; }
  const drift_params& drift() const { return drift_; }
  int battery_dim() const { return battery_.dim(); }
  int spin_dim() const { return atoms_.dim(); }

  std::size_t kraus_count() const { return kraus_.size(); }
  Mat kraus_dense(std::size_t i) const;

  // Dense joint unitary, index (a, n) -> a * (N_B + 1) + n. Intended for
  // cross-checks at small dimensions; size is the full joint dimension.
  Mat joint_unitary() const;

  // One collision in place: rho <- sum_i K_i rho K_i^+.
  void apply(Mat& rho) const;

  // Population-only fast path (valid whenever the channel preserves
  // diagonal states, i.e. was built with coherence_factor = 0).
  bool diagonal_preserving() const { return diagonal_preserving_; }
  void apply_populations(RVec& populations) const;

 private:
  battery_spec battery_;
  atom_spec atoms_;
  double tau_;
  drift_params drift_;
  bool diagonal_preserving_;
  std::vector<banded_op> kraus_;
  std::vector<banded_op::diag> pop_transfer_;  // diagonals of W[n',n] = sum_i |K_i[n',n]|^2

  // Sector eigen-blocks kept for joint_unitary(): per s, the starting a and
  // the unitary over the chain.
  struct sector_block {
    int s;
    int a_lo;
    Mat u;
  };
  std::vector<sector_block> sectors_;
};

}  // namespace qbatt
