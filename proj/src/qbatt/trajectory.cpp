// trajectory.cpp — multi-collision runs with recorded observables.

#include "qbatt/trajectory.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qbatt/errors.hpp"

namespace qbatt {

namespace {

// Spectrum-dependent scalars from one eigensolve: passive energy and the
// smallest eigenvalue.
struct spectral {
  double passive;
  double min_ev;
};

spectral spectral_scalars(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const int d = ev.size();
  double passive = 0;
  for (int i = 0; i < d; ++i) passive += i * ev(d - 1 - i);
  return {passive, ev(0)};
}

spectral spectral_scalars_diag(const RVec& p) {
  RVec s = p;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  double passive = 0;
  for (int i = 0; i < s.size(); ++i) passive += i * s(i);
  return {passive, p.minCoeff()};
}

step_observables make_row(std::int64_t k, double tau, double eps,
                          double n_bar, cx beta, double pur, double p0,
                          double p_top, double passive, double n_bar_0,
                          double n_bar_pred, cx beta_pred) {
  step_observables r;
  r.k = k;
  r.k_tau = k * tau;
  r.n_bar = n_bar;
  r.energy = eps * n_bar;
  r.power = k > 0 ? (n_bar - n_bar_0) / r.k_tau : 0.0;
  r.ergotropy = eps * (n_bar - passive);
  r.ergotropy_power = k > 0 ? (n_bar - passive) / r.k_tau : 0.0;
  r.purity = pur;
  r.beta = beta;
  r.p0 = p0;
  r.p_top = p_top;
  r.n_bar_pred = n_bar_pred;
  r.beta_pred = beta_pred;
  return r;
}

}  // namespace

trajectory run_trajectory(const collision_channel& ch,
                          const battery_state& initial, std::int64_t steps,
                          std::int64_t record_stride, double tol_scale) {
  if (steps < 1) fail(status::zero_steps, "steps must be >= 1");
  if (record_stride < 1)
    fail(status::invalid_argument, "record_stride must be >= 1");
  if (initial.dim() != ch.battery_dim())
    fail(status::invalid_argument, "state dimension does not match channel");

  const double tau = ch.tau();
  const double eps = ch.battery().energy_spacing;
  const int d = ch.battery_dim();
  const int top = d - 1;
  const double n_bar_0 = mean_level(initial);
  const cx beta_0 = ladder_coherence(initial);

  const prediction_series pred =
      predict_series(ch.drift(), n_bar_0, beta_0, steps + 1);

  auto recorded = [&](std::int64_t k) {
    return k == 0 || k == steps || (k % record_stride) == 0;
  };

  trajectory out{{}, initial};
  out.rows.reserve(static_cast<std::size_t>(steps / record_stride) + 2);

  const bool fast = ch.diagonal_preserving() &&
                    (initial.rho - Mat(initial.rho.diagonal().asDiagonal()))
                            .cwiseAbs()
                            .maxCoeff() == 0.0;

  if (fast) {
    RVec p = initial.rho.diagonal().real();
    for (std::int64_t k = 0; k <= steps; ++k) {
      if (k > 0) {
        ch.apply_populations(p);
        const double tr_err = std::abs(p.sum() - 1.0);
        if (tr_err > 1e-9 * tol_scale)
          fail(status::numerical, "trace drifted beyond tolerance");
      }
      if (!recorded(k)) continue;
      const spectral sp = spectral_scalars_diag(p);
      if (sp.min_ev < -1e-8 * tol_scale)
        fail(status::numerical, "population went significantly negative");
      double n_bar = 0;
      for (int n = 0; n < d; ++n) n_bar += n * p(n);
      out.rows.push_back(make_row(k, tau, eps, n_bar, cx(0, 0),
                                  p.squaredNorm(), p(0), p(top), sp.passive,
                                  n_bar_0, pred.n_bar[k], pred.beta[k]));
    }
    out.final_state.rho = Mat::Zero(d, d);
    out.final_state.rho.diagonal() = p.cast<cx>();
    return out;
  }

  battery_state st{initial.spec, initial.rho};
  for (std::int64_t k = 0; k <= steps; ++k) {
    if (k > 0) {
      ch.apply(st.rho);
      const double tr_err = std::abs(st.rho.trace() - cx(1.0));
      if (tr_err > 1e-9 * tol_scale)
        fail(status::numerical, "trace drifted beyond tolerance");
    }
    if (!recorded(k)) continue;
    const double herm = (st.rho - st.rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-11 * tol_scale)
      fail(status::numerical, "state drifted from hermitian");
    const spectral sp = spectral_scalars(st.rho);
    if (sp.min_ev < -1e-8 * tol_scale)
      fail(status::numerical, "state eigenvalue went significantly negative");
    out.rows.push_back(make_row(
        k, tau, eps, mean_level(st), ladder_coherence(st), purity(st),
        st.rho(0, 0).real(), st.rho(top, top).real(), sp.passive, n_bar_0,
        pred.n_bar[k], pred.beta[k]));
  }
  out.final_state = std::move(st);
  return out;
}

step_observables observe(const collision_channel& ch, const battery_state& st,
                         std::int64_t k, double n_bar_0) {
  if (k < 0) fail(status::invalid_argument, "k must be >= 0");
  if (st.dim() != ch.battery_dim())
    fail(status::invalid_argument, "state dimension does not match channel");
  // Predictions assume the run began in a diagonal state (beta_0 = 0) with
  // mean level n_bar_0.
  const prediction_series pred =
      predict_series(ch.drift(), n_bar_0, cx(0, 0), k + 1);
  const spectral sp = spectral_scalars(st.rho);
  const int top = ch.battery_dim() - 1;
  return make_row(k, ch.tau(), ch.battery().energy_spacing, mean_level(st),
                  ladder_coherence(st), purity(st), st.rho(0, 0).real(),
                  st.rho(top, top).real(), sp.passive, n_bar_0,
                  pred.n_bar[k], pred.beta[k]);
}

}  // namespace qbatt
