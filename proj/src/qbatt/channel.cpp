// channel.cpp — the one-collision quantum channel in banded Kraus form.

#include "qbatt/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "qbatt/errors.hpp"

namespace qbatt {

collision_channel::collision_channel(const battery_spec& battery,
                                     const atom_spec& atoms, double tau,
                                     double tol_scale)
    : battery_(battery), atoms_(atoms), tau_(tau) {
  validate(battery_);
  validate(atoms_);
  if (!(tau > 0)) fail(status::invalid_argument, "tau must be > 0");
  if (!(tol_scale > 0))
    fail(status::invalid_argument, "tolerance scale must be > 0");
  const long joint = static_cast<long>(battery_.dim()) * atoms_.dim();
  if (joint > 10000)
    fail(status::dimension_cap,
         "joint dimension (N_A+1)(N_B+1) exceeds the 10^4 cap");

  drift_ = compute_drift(atoms_, tau_, battery_.n_levels_top,
                         /*require_charging=*/false);
  diagonal_preserving_ = atoms_.coherence_factor == 0.0;

  const int da = atoms_.dim();   // 2j + 1
  const int db = battery_.dim();
  const int nb = battery_.n_levels_top;
  const int two_j = atoms_.n_atoms;

  // Sector chains: s = n - a in [-2j, N_B]; a runs a_lo(s)..a_hi(s). Every s
  // in the range has a nonempty chain, so sectors_ indexes contiguously.
  sectors_.clear();
  for (int s = -two_j; s <= nb; ++s) {
    const int a_lo = std::max(0, -s);
    const int a_hi = std::min(two_j, nb - s);
    const int len = a_hi - a_lo + 1;
    if (len <= 0) continue;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(len, len);
    for (int r = 0; r + 1 < len; ++r) {
      const double t = spin_step_amplitude(atoms_.n_atoms, a_lo + r);
      h(r, r + 1) = t;
      h(r + 1, r) = t;
    }
    Mat u;
    if (len == 1) {
      u = Mat::Ones(1, 1);  // H_s = 0 on a lone state
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      const Eigen::MatrixXd& q = es.eigenvectors();
      Vec phases(len);
      for (int i = 0; i < len; ++i)
        phases(i) = std::exp(cx(0.0, -tau_ * es.eigenvalues()(i)));
      u = q.cast<cx>() * phases.asDiagonal() * q.transpose().cast<cx>();
    }
    sectors_.push_back({s, a_lo, std::move(u)});
  }
  auto sector_at = [&](int s) -> const sector_block& {
    return sectors_[static_cast<std::size_t>(s + two_j)];
  };

  // Atom-state eigendecomposition rho_A = sum_i p_i |chi_i><chi_i|.
  const Mat rho_a = atom_state(atoms_);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho_a);
  std::vector<double> probs;
  std::vector<Vec> vecs;
  double psum = 0;
  for (int i = 0; i < da; ++i) {
    double p = es.eigenvalues()(i);
    if (p < -1e-10 * tol_scale)
      fail(status::numerical, "atom state has a significantly negative "
                              "eigenvalue");
    if (p < 1e-14) continue;  // clamp tiny negatives / drop null directions
    probs.push_back(p);
    vecs.push_back(es.eigenvectors().col(i));
    psum += p;
  }
  if (probs.empty())
    fail(status::numerical, "atom state has no usable eigenvalues");
  for (double& p : probs) p /= psum;  // keep sum_i K_i^+ K_i = 1 exact

  // Kraus assembly: one operator per (eigenvector i, exit row a').
  kraus_.clear();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double sp = std::sqrt(probs[i]);
    const Vec& chi = vecs[i];
    for (int ap = 0; ap < da; ++ap) {
      banded_op op;
      for (int a = 0; a < da; ++a) {
        if (std::abs(chi(a)) == 0.0) continue;
        const int delta = ap - a;
        const int n_lo = std::max(0, -delta);
        const int n_hi = std::min(nb, nb - delta);
        if (n_lo > n_hi) continue;
        banded_op::diag d{delta, n_lo, n_hi, Vec::Zero(db)};
        bool nonzero = false;
        for (int n = n_lo; n <= n_hi; ++n) {
          const sector_block& blk = sector_at(n - a);
          // a' must sit inside the chain of sector s = n - a; the n-range
          // already guarantees it (0 <= n + delta <= N_B).
          const cx v =
              sp * chi(a) * blk.u(ap - blk.a_lo, a - blk.a_lo);
          d.coef(n) = v;
          if (std::abs(v) > 0) nonzero = true;
        }
        if (nonzero) op.diags.push_back(std::move(d));
      }
      // Within one op the offsets delta = a' - a are all distinct.
      if (!op.diags.empty()) kraus_.push_back(std::move(op));
    }
  }

  // Population-transfer diagonals W[n + delta, n] = sum_i |K_i[n+delta, n]|^2.
  std::vector<Vec> w(2 * two_j + 1);
  std::vector<bool> wset(2 * two_j + 1, false);
  for (const auto& op : kraus_)
    for (const auto& d : op.diags) {
      const int idx = d.offset + two_j;
      if (!wset[idx]) {
        w[idx] = Vec::Zero(db);
        wset[idx] = true;
      }
      for (int n = d.lo; n <= d.hi; ++n) w[idx](n) += std::norm(d.coef(n));
    }
  pop_transfer_.clear();
  for (int delta = -two_j; delta <= two_j; ++delta) {
    const int idx = delta + two_j;
    if (!wset[idx]) continue;
    pop_transfer_.push_back(banded_op::diag{
        delta, std::max(0, -delta), std::min(nb, nb - delta), w[idx]});
  }
}

Mat collision_channel::kraus_dense(std::size_t i) const {
  if (i >= kraus_.size())
    fail(status::invalid_argument, "kraus index out of range");
  const int db = battery_.dim();
  Mat k = Mat::Zero(db, db);
  for (const auto& d : kraus_[i].diags)
    for (int n = d.lo; n <= d.hi; ++n) k(n + d.offset, n) = d.coef(n);
  return k;
}

Mat collision_channel::joint_unitary() const {
  const int db = battery_.dim();
  const int d = db * atoms_.dim();
  Mat u = Mat::Zero(d, d);
  for (const auto& blk : sectors_) {
    const int len = blk.u.rows();
    for (int r = 0; r < len; ++r) {
      const int ar = blk.a_lo + r, nr = blk.s + ar;
      for (int c = 0; c < len; ++c) {
        const int ac = blk.a_lo + c, nc = blk.s + ac;
        u(ar * db + nr, ac * db + nc) = blk.u(r, c);
      }
    }
  }
  return u;
}

void collision_channel::apply(Mat& rho) const {
  const int db = battery_.dim();
  if (rho.rows() != db || rho.cols() != db)
    fail(status::invalid_argument, "state dimension does not match channel");
  Mat out = Mat::Zero(db, db);
  Mat t(db, db);
  for (const auto& op : kraus_) {
    t.setZero();
    // t = rho K^+ : t.col(n + delta) += conj(coef[n]) * rho.col(n).
    for (const auto& d : op.diags) {
      const int len = d.hi - d.lo + 1;
      t.middleCols(d.lo + d.offset, len).noalias() +=
          rho.middleCols(d.lo, len) *
          d.coef.segment(d.lo, len).conjugate().asDiagonal();
    }
    // out += K t : row n + delta accumulates coef[n] * t.row(n).
    for (const auto& d : op.diags) {
      const int len = d.hi - d.lo + 1;
      out.middleRows(d.lo + d.offset, len).noalias() +=
          d.coef.segment(d.lo, len).asDiagonal() * t.middleRows(d.lo, len);
    }
  }
  rho.swap(out);
}

void collision_channel::apply_populations(RVec& populations) const {
  const int db = battery_.dim();
  if (populations.size() != db)
    fail(status::invalid_argument, "population size does not match channel");
  if (!diagonal_preserving_)
    fail(status::invalid_state,
         "population fast path requires a dephased (c = 0) channel");
  RVec out = RVec::Zero(db);
  for (const auto& d : pop_transfer_) {
    const int len = d.hi - d.lo + 1;
    out.segment(d.lo + d.offset, len) +=
        d.coef.real().segment(d.lo, len).cwiseProduct(
            populations.segment(d.lo, len));
  }
  populations.swap(out);
}

}  // namespace qbatt
