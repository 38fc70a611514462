// quantum_battery.h — C API for the collision-model quantum battery simulator.
//
// A finite ladder of N_B+1 equally spaced levels (the battery) is charged by
// repeated brief interactions ("collisions") with a stream of identically
// prepared N_A-atom clusters, each cluster acting as one large spin j = N_A/2.
// The library builds the exact collision channel in Kraus form, evolves the
// battery through arbitrarily many collisions, evaluates energy / power /
// ergotropy / purity along the way, and provides the matching closed-form
// charging laws (ballistic drift, Bessel-function coherent front, scaled
// power surface) for comparison and experiment design.
//
// All functions return qb_status; every output goes through pointers. Objects
// are opaque handles released with the matching _free call. Passing NULL for
// an unwanted output pointer is allowed anywhere except where noted. The API
// is thread-compatible: distinct handles may be used from distinct threads;
// a single handle must not be used concurrently.

#pragma once

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define QB_API __declspec(dllexport)
#else
#define QB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ---------------------------------------------------------------- status */

typedef enum qb_status {
  QB_OK = 0,
  QB_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or combination */
  QB_ERR_DIMENSION_CAP = 2,    /* joint dimension (N_A+1)(N_B+1) > 10^4 */
  QB_ERR_NON_CHARGING = 3,     /* drift + coherent speed <= 0: no charging */
  QB_ERR_ZERO_STEPS = 4,       /* a step/window count resolved to zero */
  QB_ERR_INVALID_STATE = 5,    /* state failed hermiticity/trace/positivity */
  QB_ERR_NUMERICAL = 6,        /* an internal numerical invariant failed */
  QB_ERR_IO = 7,               /* file could not be read or written */
  QB_ERR_NULL_POINTER = 8,     /* a required pointer was NULL */
  QB_ERR_UNKNOWN_KEY = 9       /* unrecognized key in a config file */
} qb_status;

/* Human-readable description of a status code (static storage). */
QB_API const char* qb_status_message(qb_status s);

/* Thread-local detail string for the most recent failure in this thread
 * (empty string if none). Static storage, overwritten by the next failure. */
QB_API const char* qb_last_error_detail(void);

/* ------------------------------------------------------------ data types */

typedef struct qb_complex {
  double re;
  double im;
} qb_complex;

/* Battery: ladder of n = 0..n_levels_top with spacing energy_spacing (epsilon).
 * Hamiltonian H_B = epsilon * sum_n n |n><n|. */
typedef struct qb_battery_spec {
  int n_levels_top;      /* N_B >= 1; dimension is N_B+1 */
  double energy_spacing; /* epsilon > 0 */
} qb_battery_spec;

/* Atom cluster: N_A two-level atoms prepared in the same pure state
 * cos(theta/2)|e> + e^{i phi} sin(theta/2)|g>, entering as one spin
 * j = N_A/2. coherence_factor c in [0,1] interpolates between the coherent
 * cluster state (c = 1) and its populations-only dephased version (c = 0). */
typedef struct qb_atom_spec {
  int n_atoms;            /* N_A >= 1 */
  double polar_angle;     /* theta_0 in [0, pi] */
  double azimuthal_angle; /* phi_0 */
  double coherence_factor; /* c in [0, 1] */
} qb_atom_spec;

/* Closed-form charging-rate parameters for one collision setting:
 *   drift_v        incoherent gain per collision, 2 j cos(theta) sin^2(tau)
 *   coherent_omega coherent gain scale,           c j sin(theta) sin(2 tau)
 *   alpha          kick amplitude i tau <J_->  (purely coherent origin)
 *   k_estimate     ceil(N_B / (v + Omega)), collisions to full charge
 */
typedef struct qb_drift_params {
  double drift_v;
  double coherent_omega;
  qb_complex alpha;
  int64_t k_estimate;
} qb_drift_params;

/* Observables of the battery state after a given collision. Powers are
 * reported in units of g*epsilon (coupling times level spacing); energies in
 * units of epsilon. */
typedef struct qb_step_observables {
  int64_t k;               /* collision index */
  double k_tau;            /* k * tau (dimensionless charging time) */
  double n_bar;            /* mean level <n> */
  double energy;           /* epsilon * n_bar */
  double power;            /* (n_bar - n_bar_0) / (k tau), 0 at k = 0 */
  double ergotropy;        /* maximal unitarily extractable energy */
  double ergotropy_power;  /* ergotropy / (k tau), 0 at k = 0 */
  double purity;           /* tr rho^2 */
  qb_complex beta;         /* ladder coherence tr[rho B] */
  double p0;               /* ground-level population */
  double p_top;            /* top-level population */
  double n_bar_pred;       /* closed-form prediction for n_bar */
  qb_complex beta_pred;    /* closed-form prediction for beta */
} qb_step_observables;

typedef struct qb_channel qb_channel;       /* one-collision quantum channel */
typedef struct qb_state qb_state;           /* battery density matrix */
typedef struct qb_trajectory qb_trajectory; /* recorded multi-collision run */
typedef struct qb_experiment qb_experiment; /* config-driven scenario */

/* -------------------------------------------------------------- channel */

/* Build the exact one-collision channel for the given battery, atom cluster,
 * and dimensionless collision strength tau = g * t > 0. Fails with
 * QB_ERR_DIMENSION_CAP if (N_A+1)(N_B+1) > 10^4. */
QB_API qb_status qb_channel_create(const qb_battery_spec* battery,
                                   const qb_atom_spec* atoms, double tau,
                                   qb_channel** out);
QB_API void qb_channel_free(qb_channel* ch);

/* Number of Kraus operators (c = 1 gives exactly N_A + 1). */
QB_API qb_status qb_channel_kraus_count(const qb_channel* ch, size_t* out);

/* Copy Kraus operator i as a dense row-major (N_B+1)^2 complex block. */
QB_API qb_status qb_channel_kraus_get(const qb_channel* ch, size_t i,
                                      qb_complex* out, size_t capacity);

/* Copy the joint collision unitary exp[-i tau (J+ B + J- B+)] as a dense
 * row-major d*d block, d = (N_A+1)(N_B+1); basis index = a*(N_B+1) + n with
 * a = j - m the spin lowering count. */
QB_API qb_status qb_channel_unitary_get(const qb_channel* ch, qb_complex* out,
                                        size_t capacity);

QB_API qb_status qb_channel_dimension(const qb_channel* ch, int* battery_dim,
                                      int* spin_dim);

/* Closed-form rate parameters for this channel's setting. */
QB_API qb_status qb_channel_drift(const qb_channel* ch, qb_drift_params* out);

/* ---------------------------------------------------------------- state */

/* Battery starts in level |initial_level>. */
QB_API qb_status qb_state_create(const qb_battery_spec* battery,
                                 int initial_level, qb_state** out);

/* Arbitrary density matrix (dense row-major (N_B+1)^2). Validated:
 * hermitian to 1e-11, unit trace to 1e-10, eigenvalues >= -1e-9. */
QB_API qb_status qb_state_create_from_matrix(const qb_battery_spec* battery,
                                             const qb_complex* matrix,
                                             qb_state** out);
QB_API qb_status qb_state_clone(const qb_state* st, qb_state** out);
QB_API void qb_state_free(qb_state* st);

QB_API qb_status qb_state_dimension(const qb_state* st, int* dim);
QB_API qb_status qb_state_matrix_get(const qb_state* st, qb_complex* out,
                                     size_t capacity);

/* Advance the state through `steps` collisions of the channel in place. */
QB_API qb_status qb_apply_collision(const qb_channel* ch, qb_state* st,
                                    int64_t steps);

/* Replace rho by D+ rho D with D = exp(kappa B+ - conj(kappa) B), the
 * finite-ladder displacement used by the coherent charging picture. */
QB_API qb_status qb_displacement_evolve(qb_state* st, qb_complex kappa);

/* ----------------------------------------------------------- observables */

/* Evaluate all scalar observables of a state. The channel supplies tau and
 * the closed-form predictions; k is the collision count the state is at.
 * n_bar_0 is the initial mean level used by the power denominators. */
QB_API qb_status qb_observe(const qb_channel* ch, const qb_state* st,
                            int64_t k, double n_bar_0,
                            qb_step_observables* out);

QB_API qb_status qb_mean_level(const qb_state* st, double* out);
QB_API qb_status qb_ladder_coherence(const qb_state* st, qb_complex* out);

/* Ergotropy in units of epsilon at unit spacing: n_bar minus the passive
 * population/level pairing (eigenvalues sorted descending onto levels
 * ascending). Scale by energy_spacing for physical units. */
QB_API qb_status qb_ergotropy(const qb_state* st, double* out);
QB_API qb_status qb_purity(const qb_state* st, double* out);

/* ------------------------------------------------------------ trajectory */

/* Run `steps` collisions from `initial`, recording observables at k = 0,
 * every record_stride-th collision, and the final collision. The initial
 * state is not modified. */
QB_API qb_status qb_run_trajectory(const qb_channel* ch,
                                   const qb_state* initial, int64_t steps,
                                   int64_t record_stride, qb_trajectory** out);
QB_API void qb_trajectory_free(qb_trajectory* tr);

QB_API qb_status qb_trajectory_size(const qb_trajectory* tr, size_t* out);
QB_API qb_status qb_trajectory_row(const qb_trajectory* tr, size_t i,
                                   qb_step_observables* out);

/* Final battery state of the run. */
QB_API qb_status qb_trajectory_final_state(const qb_trajectory* tr,
                                           qb_state** out);

/* Write the run as CSV (fixed 15-column schema, 12 significant digits). */
QB_API qb_status qb_trajectory_write_csv(const qb_trajectory* tr,
                                         const char* path);

/* ------------------------------------------------------ closed-form laws */

/* Per-collision incoherent drift v, coherent scale Omega, kick alpha, and
 * k_estimate for a setting, without building a channel. */
QB_API qb_status qb_drift_parameters(const qb_atom_spec* atoms, double tau,
                                     int n_levels_top, qb_drift_params* out);

/* Bessel J1(x), |error| < 1e-10 over the real line. */
QB_API double qb_bessel_j1(double x);

/* Overlap prefactor <0| D(k alpha) |0> = J1(2 k |alpha|) / (k |alpha|)
 * (limit 1 at k alpha = 0) for the infinite-ladder displacement. */
QB_API double qb_vacuum_overlap(double k_abs_alpha);

/* Catalan number C_n (n <= 36; larger n fails QB_ERR_INVALID_ARGUMENT). */
QB_API qb_status qb_catalan(int n, uint64_t* out);

/* 2n-th moment <0|(i(B - B+))^{2n}|0> of the infinite-ladder kick generator
 * scaled by |alpha|^{2n}: (-1)^n |alpha|^{2n} C_n. */
QB_API qb_status qb_vacuum_moment(int n, qb_complex alpha, double* out);

/* Coherent charging front profile
 *   f(x) = (1/x) int_0^x (x - u) [J1(2u)/u]^2 du,  f(0) = 0,
 * reaching 8/(3 pi) as x -> infinity. Adaptive quadrature, abs err <= 1e-8. */
QB_API double qb_charging_profile(double x);

/* Its saturation value 8/(3 pi). */
QB_API double qb_charging_profile_limit(void);

/* Closed-form n_bar and beta after k collisions (infinite-ladder laws):
 *   beta_k = beta_0 - alpha * sum_{k'=0}^{k-1} w(k')^2,
 *   n_bar_k = n_bar_0 + k v + 2 sum_{k'=0}^{k-2} (k-1-k') q(k'),
 * with w(k) = J1(2k|alpha|)/(k|alpha|), q(k) = |alpha|^2 w(k)^2 (limits at
 * k = 0). Arrays are filled for k = 0..count-1. Either output may be NULL. */
QB_API qb_status qb_predict_series(const qb_atom_spec* atoms, double tau,
                                   double n_bar_0, qb_complex beta_0,
                                   int64_t count, double* n_bar_out,
                                   qb_complex* beta_out);

/* Scaled coherent charging power P/(g epsilon N_A) = sin(theta) f(x) at
 * x = k tau c j sin(theta). */
QB_API double qb_coherent_power_scaled(double theta, double c, int n_atoms,
                                       double k_tau);

/* Scaled incoherent charging power P/(g epsilon N_A) = cos(theta) sin^2(tau)/tau. */
QB_API double qb_incoherent_power_scaled(double theta, double tau);

/* Short-time power bound P/(g epsilon N_A) <= (sin(tau)/tau) sin(tau + theta).
 * unphysical (may be NULL) is set to 1 when the bound is negative. */
QB_API double qb_power_bound_scaled(double theta, double tau, int* unphysical);

/* Root of tau cot(tau) = 1/2 in (0, pi): collision strength maximizing the
 * incoherent power sin^2(tau)/tau. Bisection to 1e-12. */
QB_API double qb_optimal_tau_incoherent(void);

/* Incoherent-power ridge: tau maximizing the bound at fixed theta,
 * tau_ridge(theta) = root of d/dtau [sin(tau) sin(tau+theta)/tau] = 0,
 * located numerically in (0, pi - theta); equals 1.1656 at theta = 0. */
QB_API double qb_ridge_tau(double theta);

/* ------------------------------------------------------------ experiment */

/* Load a scenario description from a flat key = value config file.
 * Unknown keys fail with QB_ERR_UNKNOWN_KEY. A NULL path gives an empty
 * description to be filled through qb_experiment_set. */
QB_API qb_status qb_experiment_load(const char* path, qb_experiment** out);
QB_API void qb_experiment_free(qb_experiment* ex);

/* Override entries after load (same validation as the file). */
QB_API qb_status qb_experiment_set(qb_experiment* ex, const char* key,
                                   const char* value);
QB_API qb_status qb_experiment_get(const qb_experiment* ex, const char* key,
                                   char* buf, size_t capacity);

/* Execute the scenario; writes the data file(s) at the configured output
 * path plus a .meta.json sidecar describing the run. */
QB_API qb_status qb_experiment_execute(qb_experiment* ex);

/* One-line summary of what execute() produced (static per handle). */
QB_API const char* qb_experiment_summary(const qb_experiment* ex);

#ifdef __cplusplus
} /* extern "C" */
#endif
