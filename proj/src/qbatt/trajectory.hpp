// trajectory.hpp — multi-collision runs with recorded observables.

#pragma once

#include <cstdint>
#include <vector>

#include "qbatt/channel.hpp"
#include "qbatt/observables.hpp"

namespace qbatt {

struct step_observables {
  std::int64_t k = 0;
  double k_tau = 0;
  double n_bar = 0;
  double energy = 0;           // epsilon * n_bar
  double power = 0;            // (n_bar - n_bar_0) / (k tau), in g epsilon
  double ergotropy = 0;        // epsilon * (n_bar - passive)
  double ergotropy_power = 0;  // (n_bar - passive) / (k tau), in g epsilon
  double purity = 0;
  cx beta{0, 0};
  double p0 = 0;
  double p_top = 0;
  double n_bar_pred = 0;
  cx beta_pred{0, 0};
};

struct trajectory {
  std::vector<step_observables> rows;
  battery_state final_state;
};

// Run `steps` collisions from `initial`, recording k = 0, every
// record_stride-th step, and the final step. Validates trace each step
// (1e-9) and hermiticity/positivity at recorded rows (1e-11 / -1e-8), all
// scaled by tol_scale. Uses the population fast path when the channel is
// diagonal-preserving and the state is exactly diagonal.
trajectory run_trajectory(const collision_channel& ch,
                          const battery_state& initial, std::int64_t steps,
                          std::int64_t record_stride, double tol_scale = 1.0);

// Observables of a single state treated as the k-th point of a run whose
// initial mean level was n_bar_0 (predictions from the channel's drift).
step_observables observe(const collision_channel& ch, const battery_state& st,
                         std::int64_t k, double n_bar_0);

}  // namespace qbatt
