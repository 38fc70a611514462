// capi.cpp — the C ABI boundary: opaque handles, status mapping, details.

#include "quantum_battery.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "qbatt/channel.hpp"
#include "qbatt/closed_form.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/errors.hpp"
#include "qbatt/observables.hpp"
#include "qbatt/scenarios.hpp"
#include "qbatt/special.hpp"
#include "qbatt/trajectory.hpp"

struct qb_channel {
  qbatt::collision_channel impl;
};
struct qb_state {
  qbatt::battery_state impl;
};
struct qb_trajectory {
  qbatt::trajectory impl;
};
struct qb_experiment {
  qbatt::config cfg;
  std::string summary;
};

namespace {

thread_local std::string g_detail;

qb_status fail_with(qb_status s, const std::string& what) {
  g_detail = what;
  return s;
}

// Run fn, translating core exceptions to status codes + detail text.
template <typename Fn>
qb_status guarded(Fn&& fn) {
  try {
    fn();
    return QB_OK;
  } catch (const qbatt::error& e) {
    return fail_with(static_cast<qb_status>(static_cast<int>(e.code())),
                     e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(QB_ERR_NUMERICAL, "allocation failed");
  } catch (const std::exception& e) {
    return fail_with(QB_ERR_NUMERICAL, e.what());
  }
}

#define QB_REQUIRE(ptr)                                            \
  do {                                                             \
    if (!(ptr))                                                    \
      return fail_with(QB_ERR_NULL_POINTER,                        \
                       "required pointer '" #ptr "' is NULL");     \
  } while (0)

qbatt::battery_spec to_core(const qb_battery_spec& b) {
  qbatt::battery_spec s;
  s.n_levels_top = b.n_levels_top;
  s.energy_spacing = b.energy_spacing;
  return s;
}

qbatt::atom_spec to_core(const qb_atom_spec& a) {
  qbatt::atom_spec s;
  s.n_atoms = a.n_atoms;
  s.polar_angle = a.polar_angle;
  s.azimuthal_angle = a.azimuthal_angle;
  s.coherence_factor = a.coherence_factor;
  return s;
}

qb_complex to_c(qbatt::cx z) { return {z.real(), z.imag()}; }

qb_drift_params to_c(const qbatt::drift_params& d) {
  qb_drift_params o;
  o.drift_v = d.v;
  o.coherent_omega = d.omega;
  o.alpha = to_c(d.alpha);
  o.k_estimate = d.k_estimate;
  return o;
}

qb_step_observables to_c(const qbatt::step_observables& r) {
  qb_step_observables o;
  o.k = r.k;
  o.k_tau = r.k_tau;
  o.n_bar = r.n_bar;
  o.energy = r.energy;
  o.power = r.power;
  o.ergotropy = r.ergotropy;
  o.ergotropy_power = r.ergotropy_power;
  o.purity = r.purity;
  o.beta = to_c(r.beta);
  o.p0 = r.p0;
  o.p_top = r.p_top;
  o.n_bar_pred = r.n_bar_pred;
  o.beta_pred = to_c(r.beta_pred);
  return o;
}

// Row-major copy into a caller buffer; throws (caught by guarded) when the
// buffer is too small.
void copy_dense(const qbatt::Mat& m, qb_complex* out, size_t capacity) {
  const size_t need = static_cast<size_t>(m.rows()) * m.cols();
  if (capacity < need)
    qbatt::fail(qbatt::status::invalid_argument,
                "output capacity " + std::to_string(capacity) +
                    " below required " + std::to_string(need));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out[static_cast<size_t>(r) * m.cols() + c] = to_c(m(r, c));
}

}  // namespace

/* ------------------------------------------------------------------ status */

const char* qb_status_message(qb_status s) {
  switch (s) {
    case QB_OK:
      return "ok";
    case QB_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QB_ERR_DIMENSION_CAP:
      return "joint dimension exceeds the 10^4 cap";
    case QB_ERR_NON_CHARGING:
      return "setting does not charge (drift + coherent speed <= 0)";
    case QB_ERR_ZERO_STEPS:
      return "step count resolved to zero";
    case QB_ERR_INVALID_STATE:
      return "state failed hermiticity/trace/positivity validation";
    case QB_ERR_NUMERICAL:
      return "internal numerical invariant failed";
    case QB_ERR_IO:
      return "file could not be read or written";
    case QB_ERR_NULL_POINTER:
      return "required pointer was NULL";
    case QB_ERR_UNKNOWN_KEY:
      return "unrecognized configuration key";
  }
  return "unknown status";
}

const char* qb_last_error_detail(void) { return g_detail.c_str(); }

/* ----------------------------------------------------------------- channel */

qb_status qb_channel_create(const qb_battery_spec* battery,
                            const qb_atom_spec* atoms, double tau,
                            qb_channel** out) {
  QB_REQUIRE(battery);
  QB_REQUIRE(atoms);
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new qb_channel{
        qbatt::collision_channel(to_core(*battery), to_core(*atoms), tau)};
  });
}

void qb_channel_free(qb_channel* ch) { delete ch; }

qb_status qb_channel_kraus_count(const qb_channel* ch, size_t* out) {
  QB_REQUIRE(ch);
  QB_REQUIRE(out);
  *out = ch->impl.kraus_count();
  return QB_OK;
}

qb_status qb_channel_kraus_get(const qb_channel* ch, size_t i, qb_complex* out,
                               size_t capacity) {
  QB_REQUIRE(ch);
  QB_REQUIRE(out);
  if (i >= ch->impl.kraus_count())
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "Kraus index " + std::to_string(i) + " out of range");
  return guarded(
      [&] { copy_dense(ch->impl.kraus_dense(i), out, capacity); });
}

qb_status qb_channel_unitary_get(const qb_channel* ch, qb_complex* out,
                                 size_t capacity) {
  QB_REQUIRE(ch);
  QB_REQUIRE(out);
  return guarded(
      [&] { copy_dense(ch->impl.joint_unitary(), out, capacity); });
}

qb_status qb_channel_dimension(const qb_channel* ch, int* battery_dim,
                               int* spin_dim) {
  QB_REQUIRE(ch);
  if (battery_dim) *battery_dim = ch->impl.battery_dim();
  if (spin_dim) *spin_dim = ch->impl.spin_dim();
  return QB_OK;
}

qb_status qb_channel_drift(const qb_channel* ch, qb_drift_params* out) {
  QB_REQUIRE(ch);
  QB_REQUIRE(out);
  *out = to_c(ch->impl.drift());
  return QB_OK;
}

/* ------------------------------------------------------------------- state */

qb_status qb_state_create(const qb_battery_spec* battery, int initial_level,
                          qb_state** out) {
  QB_REQUIRE(battery);
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new qb_state{
        qbatt::make_level_state(to_core(*battery), initial_level)};
  });
}

qb_status qb_state_create_from_matrix(const qb_battery_spec* battery,
                                      const qb_complex* matrix,
                                      qb_state** out) {
  QB_REQUIRE(battery);
  QB_REQUIRE(matrix);
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const qbatt::battery_spec spec = to_core(*battery);
    qbatt::validate(spec);
    const int d = spec.dim();
    qbatt::Mat rho(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        const qb_complex z = matrix[static_cast<size_t>(r) * d + c];
        rho(r, c) = qbatt::cx(z.re, z.im);
      }
    *out = new qb_state{qbatt::make_state_from_matrix(spec, rho)};
  });
}

qb_status qb_state_clone(const qb_state* st, qb_state** out) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new qb_state{st->impl}; });
}

void qb_state_free(qb_state* st) { delete st; }

qb_status qb_state_dimension(const qb_state* st, int* dim) {
  QB_REQUIRE(st);
  QB_REQUIRE(dim);
  *dim = st->impl.dim();
  return QB_OK;
}

qb_status qb_state_matrix_get(const qb_state* st, qb_complex* out,
                              size_t capacity) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  return guarded([&] { copy_dense(st->impl.rho, out, capacity); });
}

qb_status qb_apply_collision(const qb_channel* ch, qb_state* st,
                             int64_t steps) {
  QB_REQUIRE(ch);
  QB_REQUIRE(st);
  if (steps < 0)
    return fail_with(QB_ERR_INVALID_ARGUMENT, "steps must be >= 0");
  if (st->impl.dim() != ch->impl.battery_dim())
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "state dimension does not match the channel battery");
  return guarded([&] {
    for (int64_t i = 0; i < steps; ++i) ch->impl.apply(st->impl.rho);
  });
}

qb_status qb_displacement_evolve(qb_state* st, qb_complex kappa) {
  QB_REQUIRE(st);
  return guarded(
      [&] { qbatt::displacement_evolve(st->impl, qbatt::cx(kappa.re, kappa.im)); });
}

/* ------------------------------------------------------------- observables */

qb_status qb_observe(const qb_channel* ch, const qb_state* st, int64_t k,
                     double n_bar_0, qb_step_observables* out) {
  QB_REQUIRE(ch);
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  if (st->impl.dim() != ch->impl.battery_dim())
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "state dimension does not match the channel battery");
  return guarded(
      [&] { *out = to_c(qbatt::observe(ch->impl, st->impl, k, n_bar_0)); });
}

qb_status qb_mean_level(const qb_state* st, double* out) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  return guarded([&] { *out = qbatt::mean_level(st->impl); });
}

qb_status qb_ladder_coherence(const qb_state* st, qb_complex* out) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  return guarded([&] { *out = to_c(qbatt::ladder_coherence(st->impl)); });
}

qb_status qb_ergotropy(const qb_state* st, double* out) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  return guarded([&] { *out = qbatt::ergotropy_levels(st->impl); });
}

qb_status qb_purity(const qb_state* st, double* out) {
  QB_REQUIRE(st);
  QB_REQUIRE(out);
  return guarded([&] { *out = qbatt::purity(st->impl); });
}

/* -------------------------------------------------------------- trajectory */

qb_status qb_run_trajectory(const qb_channel* ch, const qb_state* initial,
                            int64_t steps, int64_t record_stride,
                            qb_trajectory** out) {
  QB_REQUIRE(ch);
  QB_REQUIRE(initial);
  QB_REQUIRE(out);
  *out = nullptr;
  if (initial->impl.dim() != ch->impl.battery_dim())
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "state dimension does not match the channel battery");
  return guarded([&] {
    *out = new qb_trajectory{
        qbatt::run_trajectory(ch->impl, initial->impl, steps, record_stride)};
  });
}

void qb_trajectory_free(qb_trajectory* tr) { delete tr; }

qb_status qb_trajectory_size(const qb_trajectory* tr, size_t* out) {
  QB_REQUIRE(tr);
  QB_REQUIRE(out);
  *out = tr->impl.rows.size();
  return QB_OK;
}

qb_status qb_trajectory_row(const qb_trajectory* tr, size_t i,
                            qb_step_observables* out) {
  QB_REQUIRE(tr);
  QB_REQUIRE(out);
  if (i >= tr->impl.rows.size())
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "row index " + std::to_string(i) + " out of range");
  *out = to_c(tr->impl.rows[i]);
  return QB_OK;
}

qb_status qb_trajectory_final_state(const qb_trajectory* tr, qb_state** out) {
  QB_REQUIRE(tr);
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new qb_state{tr->impl.final_state}; });
}

qb_status qb_trajectory_write_csv(const qb_trajectory* tr, const char* path) {
  QB_REQUIRE(tr);
  QB_REQUIRE(path);
  return guarded([&] { qbatt::write_trajectory_csv(tr->impl, path); });
}

/* --------------------------------------------------------- closed-form laws */

qb_status qb_drift_parameters(const qb_atom_spec* atoms, double tau,
                              int n_levels_top, qb_drift_params* out) {
  QB_REQUIRE(atoms);
  QB_REQUIRE(out);
  return guarded([&] {
    *out = to_c(qbatt::compute_drift(to_core(*atoms), tau, n_levels_top,
                                     false));
  });
}

double qb_bessel_j1(double x) { return qbatt::bessel_j1(x); }

double qb_vacuum_overlap(double k_abs_alpha) {
  return qbatt::vacuum_overlap(k_abs_alpha);
}

qb_status qb_catalan(int n, uint64_t* out) {
  QB_REQUIRE(out);
  return guarded([&] { *out = qbatt::catalan(n); });
}

qb_status qb_vacuum_moment(int n, qb_complex alpha, double* out) {
  QB_REQUIRE(out);
  return guarded([&] {
    *out = qbatt::vacuum_moment(n, qbatt::cx(alpha.re, alpha.im));
  });
}

double qb_charging_profile(double x) { return qbatt::charging_profile(x); }

double qb_charging_profile_limit(void) {
  return qbatt::charging_profile_limit();
}

qb_status qb_predict_series(const qb_atom_spec* atoms, double tau,
                            double n_bar_0, qb_complex beta_0, int64_t count,
                            double* n_bar_out, qb_complex* beta_out) {
  QB_REQUIRE(atoms);
  return guarded([&] {
    // n_levels_top only sets k_estimate, which the series does not use.
    const qbatt::drift_params d =
        qbatt::compute_drift(to_core(*atoms), tau, 1, false);
    const qbatt::prediction_series s = qbatt::predict_series(
        d, n_bar_0, qbatt::cx(beta_0.re, beta_0.im), count);
    for (int64_t k = 0; k < count; ++k) {
      if (n_bar_out) n_bar_out[k] = s.n_bar[k];
      if (beta_out) beta_out[k] = to_c(s.beta[k]);
    }
  });
}

double qb_coherent_power_scaled(double theta, double c, int n_atoms,
                                double k_tau) {
  return qbatt::coherent_power_scaled(theta, c, n_atoms, k_tau);
}

double qb_incoherent_power_scaled(double theta, double tau) {
  return qbatt::incoherent_power_scaled(theta, tau);
}

double qb_power_bound_scaled(double theta, double tau, int* unphysical) {
  bool u = false;
  const double b = qbatt::power_bound_scaled(theta, tau, &u);
  if (unphysical) *unphysical = u ? 1 : 0;
  return b;
}

double qb_optimal_tau_incoherent(void) {
  return qbatt::optimal_tau_incoherent();
}

double qb_ridge_tau(double theta) {
  try {
    return qbatt::ridge_tau(theta);
  } catch (const qbatt::error& e) {
    g_detail = e.what();
    return std::nan("");
  }
}

/* -------------------------------------------------------------- experiment */

qb_status qb_experiment_load(const char* path, qb_experiment** out) {
  QB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    qb_experiment* ex = new qb_experiment;
    if (path) {
      try {
        ex->cfg = qbatt::config::from_file(path);
      } catch (...) {
        delete ex;
        throw;
      }
    }
    *out = ex;
  });
}

void qb_experiment_free(qb_experiment* ex) { delete ex; }

qb_status qb_experiment_set(qb_experiment* ex, const char* key,
                            const char* value) {
  QB_REQUIRE(ex);
  QB_REQUIRE(key);
  QB_REQUIRE(value);
  return guarded([&] { ex->cfg.set(key, value); });
}

qb_status qb_experiment_get(const qb_experiment* ex, const char* key,
                            char* buf, size_t capacity) {
  QB_REQUIRE(ex);
  QB_REQUIRE(key);
  QB_REQUIRE(buf);
  if (!qbatt::config::known_key(key))
    return fail_with(QB_ERR_UNKNOWN_KEY,
                     std::string("unknown configuration key '") + key + "'");
  const std::string v = ex->cfg.get_string(key, "");
  if (capacity < v.size() + 1)
    return fail_with(QB_ERR_INVALID_ARGUMENT,
                     "buffer capacity " + std::to_string(capacity) +
                         " below required " + std::to_string(v.size() + 1));
  std::memcpy(buf, v.c_str(), v.size() + 1);
  return QB_OK;
}

qb_status qb_experiment_execute(qb_experiment* ex) {
  QB_REQUIRE(ex);
  return guarded([&] { ex->summary = qbatt::run_scenario(ex->cfg); });
}

const char* qb_experiment_summary(const qb_experiment* ex) {
  return ex ? ex->summary.c_str() : "";
}
