// test_channel.cpp — the collision channel against a dense joint oracle.
//
// The oracle rebuilds everything the slow way: dense H = J+ (x) B + J- (x) B+,
// matrix exponential by hermitian eigendecomposition, conjugation of the full
// product state, partial trace over the spin. Anchor numbers are frozen from
// an independent implementation of the same model.

#include <cmath>
#include <complex>
#include <random>
#include <tuple>
#include <utility>

#include "doctest.h"
#include "qbatt/channel.hpp"
#include "qbatt/errors.hpp"
#include "qbatt/observables.hpp"

using namespace qbatt;

namespace {

constexpr double kPi = 3.14159265358979323846;

battery_spec bspec(int nb) {
  battery_spec b;
  b.n_levels_top = nb;
  return b;
}

atom_spec aspec(int na, double th, double phi, double c) {
  atom_spec a;
  a.n_atoms = na;
  a.polar_angle = th;
  a.azimuthal_angle = phi;
  a.coherence_factor = c;
  return a;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      out.block(r * y.rows(), c * y.cols(), y.rows(), y.cols()) = x(r, c) * y;
  return out;
}

// exp(-i tau H) for hermitian H.
Mat expm_unitary(const Mat& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    phases(i) = std::exp(cx(0, -tau * es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

Mat joint_unitary_oracle(int na, int nb, double tau) {
  const spin_ops s = make_spin_ops(na);
  const Mat b = ladder_lower(nb + 1);
  const Mat h = kron(s.jp, b) + kron(s.jm, b.adjoint());
  return expm_unitary(h, tau);
}

// One dense collision: rho_B <- Tr_A[ U (rho_A (x) rho_B) U+ ].
Mat evolve_dense(const Mat& u, const Mat& rho_a, const Mat& rho_b) {
  const Mat joint = u * kron(rho_a, rho_b) * u.adjoint();
  const int da = static_cast<int>(rho_a.rows());
  const int db = static_cast<int>(rho_b.rows());
  Mat out = Mat::Zero(db, db);
  for (int a = 0; a < da; ++a)
    out += joint.block(a * db, a * db, db, db);
  return out;
}

Mat random_density(int d, std::mt19937& rng) {
  std::normal_distribution<double> g;
  Mat a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) a(r, c) = cx(g(rng), g(rng));
  Mat rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace

TEST_CASE("Kraus operators are complete: sum K+K = I") {
  const struct {
    int nb, na;
    double th, phi, c, tau;
  } cases[] = {
      {6, 2, 1.1, 0.4, 0.7, 0.6},
      {5, 3, kPi / 2, 0.0, 1.0, 0.3},
      {4, 1, 2.0, 1.0, 0.0, 0.9},
      {8, 4, 0.3, -0.7, 0.25, 1.2},
  };
  for (const auto& t : cases) {
    const collision_channel ch(bspec(t.nb), aspec(t.na, t.th, t.phi, t.c),
                               t.tau);
    const int d = t.nb + 1;
    Mat sum = Mat::Zero(d, d);
    for (std::size_t i = 0; i < ch.kraus_count(); ++i) {
      const Mat k = ch.kraus_dense(i);
      sum += k.adjoint() * k;
    }
    CHECK((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("coherent clusters give exactly N_A + 1 Kraus operators") {
  const collision_channel ch(bspec(6), aspec(3, 0.9, 0.2, 1.0), 0.4);
  CHECK(ch.kraus_count() == 4);
}

TEST_CASE("joint_unitary matches the dense exponential and is unitary") {
  const std::tuple<int, int, double> cases[] = {
      {2, 6, 0.6}, {3, 5, 1.1}, {1, 4, 0.25}};
  for (const auto& [na, nb, tau] : cases) {
    const collision_channel ch(bspec(nb), aspec(na, 0.7, -0.3, 1.0), tau);
    const Mat u = ch.joint_unitary();
    const Mat u_ref = joint_unitary_oracle(na, nb, tau);
    CHECK((u - u_ref).cwiseAbs().maxCoeff() < 1e-9);
    const Mat uu = u.adjoint() * u;
    CHECK((uu - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("channel apply equals dense joint evolution on random states") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> uth(0.0, kPi);
  std::uniform_real_distribution<double> uphi(-kPi, kPi);
  std::uniform_real_distribution<double> uc(0.0, 1.0);
  std::uniform_real_distribution<double> utau(0.05, 1.5);
  std::uniform_int_distribution<int> unb(2, 8);
  std::uniform_int_distribution<int> una(1, 4);

  for (int rep = 0; rep < 12; ++rep) {
    const int nb = unb(rng), na = una(rng);
    const atom_spec at = aspec(na, uth(rng), uphi(rng), uc(rng));
    const double tau = utau(rng);
    const collision_channel ch(bspec(nb), at, tau);

    Mat rho = random_density(nb + 1, rng);
    const Mat u = joint_unitary_oracle(na, nb, tau);
    const Mat expect = evolve_dense(u, atom_state(at), rho);
    ch.apply(rho);
    CHECK((rho - expect).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  }
}

TEST_CASE("collisions conserve <Jz + n> of the joint state") {
  std::mt19937 rng(777);
  const std::pair<int, int> cases[] = {{2, 7}, {4, 5}};
  for (const auto& [na, nb] : cases) {
    const atom_spec at = aspec(na, 1.3, 0.5, 0.6);
    const Mat u = joint_unitary_oracle(na, nb, 0.8);
    const spin_ops s = make_spin_ops(na);
    const Mat nmat =
        level_numbers(nb + 1).cast<cx>().asDiagonal().toDenseMatrix();
    const Mat q = kron(s.jz, Mat::Identity(nb + 1, nb + 1)) +
                  kron(Mat::Identity(na + 1, na + 1), nmat);
    const Mat joint0 = kron(atom_state(at), random_density(nb + 1, rng));
    const Mat joint1 = u * joint0 * u.adjoint();
    const cx before = (q * joint0).trace();
    const cx after = (q * joint1).trace();
    CHECK(std::abs(before - after) < 1e-9);
  }
}

TEST_CASE("dephased clusters preserve diagonal states exactly") {
  const collision_channel ch(bspec(6), aspec(2, 1.1, 0.4, 0.0), 0.6);
  CHECK(ch.diagonal_preserving());

  Mat rho = Mat::Zero(7, 7);
  rho(2, 2) = 1.0;
  for (int k = 0; k < 5; ++k) ch.apply(rho);
  Mat off = rho;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);

  // Population fast path agrees with the dense apply.
  RVec pop = RVec::Zero(7);
  pop(2) = 1.0;
  for (int k = 0; k < 5; ++k) ch.apply_populations(pop);
  CHECK((pop - rho.diagonal().real()).cwiseAbs().maxCoeff() < 1e-12);

  const collision_channel coh(bspec(6), aspec(2, 1.1, 0.4, 0.7), 0.6);
  CHECK_FALSE(coh.diagonal_preserving());
  RVec dummy = RVec::Zero(7);
  CHECK_THROWS_AS(coh.apply_populations(dummy), error);
}

TEST_CASE("frozen anchor: 3 coherent collisions (N_B=6, N_A=2)") {
  const collision_channel ch(bspec(6), aspec(2, 1.1, 0.4, 0.7), 0.6);
  CHECK(ch.kraus_count() == 9);

  battery_state st = make_level_state(bspec(6), 2);
  for (int k = 0; k < 3; ++k) ch.apply(st.rho);

  CHECK(std::abs(mean_level(st) - 2.898297349287369) < 1e-10);
  CHECK(std::abs(ladder_coherence(st) -
                 cx(-1.769631680529831e-02, -4.185572526000518e-02)) < 1e-10);
  CHECK(std::abs(purity(st) - 2.301659428508092e-01) < 1e-10);
  CHECK(std::abs(ergotropy_levels(st) - 1.411135255448531) < 1e-9);
  CHECK(std::abs(st.rho(0, 0).real() - 1.181093429464906e-01) < 1e-10);
  CHECK(std::abs(st.rho(6, 6).real() - 5.253232931258660e-02) < 1e-10);
}

TEST_CASE("frozen anchor: 5 dephased collisions (N_B=6, N_A=2)") {
  const collision_channel ch(bspec(6), aspec(2, 1.1, 0.4, 0.0), 0.6);
  RVec pop = RVec::Zero(7);
  pop(2) = 1.0;
  for (int k = 0; k < 5; ++k) ch.apply_populations(pop);

  const double ref[7] = {5.406258564563e-02, 1.018094585492e-01,
                         1.546589020168e-01, 1.938291494587e-01,
                         1.949637524054e-01, 1.604460816991e-01,
                         1.402300702252e-01};
  double nbar = 0;
  for (int n = 0; n < 7; ++n) {
    CHECK(std::abs(pop(n) - ref[n]) < 1e-11);
    nbar += n * pop(n);
  }
  CHECK(std::abs(nbar - 3.416080550427114) < 1e-10);
}

TEST_CASE("single-atom collision is a Rabi cycle at the ladder foot") {
  // theta = 0 sends |e>; one collision from |0> excites level 1 with
  // probability sin^2(tau) (unit coupling at j = 1/2).
  const double tau = 0.7;
  const collision_channel ch(bspec(4), aspec(1, 0.0, 0.0, 1.0), tau);
  battery_state st = make_level_state(bspec(4), 0);
  ch.apply(st.rho);
  const double s2 = std::sin(tau) * std::sin(tau);
  CHECK(std::abs(st.rho(1, 1).real() - s2) < 1e-12);
  CHECK(std::abs(st.rho(0, 0).real() - (1.0 - s2)) < 1e-12);
}

TEST_CASE("joint dimension cap") {
  CHECK_NOTHROW(collision_channel(bspec(4999), aspec(1, 0.1, 0.0, 1.0), 0.3));
  CHECK_THROWS_AS(collision_channel(bspec(5000), aspec(1, 0.1, 0.0, 1.0), 0.3),
                  error);
  try {
    collision_channel(bspec(5000), aspec(1, 0.1, 0.0, 1.0), 0.3);
  } catch (const error& e) {
    CHECK(e.code() == status::dimension_cap);
  }
}
