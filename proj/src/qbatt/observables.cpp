// observables.cpp — battery density matrix and the scalars read off it.

#include "qbatt/observables.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qbatt/errors.hpp"

namespace qbatt {

battery_state make_level_state(const battery_spec& spec, int initial_level) {
  validate(spec);
  if (initial_level < 0 || initial_level > spec.n_levels_top)
    fail(status::invalid_argument, "initial_level outside the ladder");
  battery_state st{spec, Mat::Zero(spec.dim(), spec.dim())};
  st.rho(initial_level, initial_level) = 1.0;
  return st;
}

battery_state make_state_from_matrix(const battery_spec& spec, const Mat& rho,
                                     double tol_scale) {
  validate(spec);
  if (rho.rows() != spec.dim() || rho.cols() != spec.dim())
    fail(status::invalid_argument, "state matrix has the wrong dimension");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-11 * tol_scale)
    fail(status::invalid_state, "state is not hermitian to tolerance");
  const double tr_err = std::abs(rho.trace() - cx(1.0));
  if (tr_err > 1e-10 * tol_scale)
    fail(status::invalid_state, "state trace differs from one");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (rho + rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9 * tol_scale)
    fail(status::invalid_state, "state has a negative eigenvalue");
  return battery_state{spec, rho};
}

double mean_level(const battery_state& st) {
  double s = 0;
  for (int n = 0; n < st.dim(); ++n) s += n * st.rho(n, n).real();
  return s;
}

cx ladder_coherence(const battery_state& st) {
  // tr[rho B] with B = sum |n-1><n|: the subdiagonal sum of rho.
  cx s = 0;
  for (int n = 0; n + 1 < st.dim(); ++n) s += st.rho(n + 1, n);
  return s;
}

double purity(const battery_state& st) { return st.rho.squaredNorm(); }

double ergotropy_levels(const battery_state& st) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (st.rho + st.rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  const int d = st.dim();
  // Passive energy: largest population on the lowest level, and so on down.
  double passive = 0;
  for (int i = 0; i < d; ++i) passive += i * ev(d - 1 - i);
  return mean_level(st) - passive;
}

double min_eigenvalue(const battery_state& st) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (st.rho + st.rho.adjoint()),
                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void displacement_evolve(battery_state& st, cx kappa) {
  const int d = st.dim();
  const Mat b = ladder_lower(d);
  // A = kappa B^+ - conj(kappa) B is anti-hermitian; diagonalize iA.
  Mat ia = cx(0, 1) * (kappa * b.adjoint() - std::conj(kappa) * b);
  Eigen::SelfAdjointEigenSolver<Mat> es(ia);
  Vec phases(d);
  for (int i = 0; i < d; ++i)
    phases(i) = std::exp(cx(0.0, -es.eigenvalues()(i)));  // exp(A) = exp(-i(iA))
  const Mat dop = es.eigenvectors() * phases.asDiagonal() *
                  es.eigenvectors().adjoint();
  st.rho = (dop.adjoint() * st.rho * dop).eval();
}

}  // namespace qbatt
