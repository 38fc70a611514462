// test_operators.cpp — ladder/spin matrices and the cluster state.

#include <cmath>
#include <complex>

#include "doctest.h"
#include "qbatt/errors.hpp"
#include "qbatt/operators.hpp"

using namespace qbatt;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ladder_lower has the finite-ladder edge defect") {
  const int d = 6;
  const Mat b = ladder_lower(d);
  for (int n = 1; n < d; ++n) CHECK(b(n - 1, n) == cx(1, 0));
  CHECK(b.cwiseAbs().sum() == doctest::Approx(d - 1));  // only those entries

  Mat comm = b * b.adjoint() - b.adjoint() * b;  // |0><0| - |top><top|
  CHECK(std::abs(comm(0, 0) - cx(1, 0)) < 1e-15);
  CHECK(std::abs(comm(d - 1, d - 1) + cx(1, 0)) < 1e-15);
  comm(0, 0) = comm(d - 1, d - 1) = 0;
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("spin matrices satisfy the su(2) algebra") {
  for (int na : {1, 2, 3, 5}) {
    const spin_ops s = make_spin_ops(na);
    const Mat c1 = s.jz * s.jp - s.jp * s.jz - s.jp;          // [Jz,J+] = J+
    const Mat c2 = s.jz * s.jm - s.jm * s.jz + s.jm;          // [Jz,J-] = -J-
    const Mat c3 = s.jp * s.jm - s.jm * s.jp - 2.0 * s.jz;    // [J+,J-] = 2Jz
    CHECK(c1.cwiseAbs().maxCoeff() < 1e-13);
    CHECK(c2.cwiseAbs().maxCoeff() < 1e-13);
    CHECK(c3.cwiseAbs().maxCoeff() < 1e-13);
    // Casimir J^2 = j(j+1) I.
    const double j = 0.5 * na;
    const Mat j2 = 0.5 * (s.jp * s.jm + s.jm * s.jp) + s.jz * s.jz;
    CHECK((j2 - j * (j + 1) * Mat::Identity(na + 1, na + 1))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("spin_step_amplitude matches the J- matrix elements") {
  for (int na : {1, 2, 4}) {
    const spin_ops s = make_spin_ops(na);
    for (int a = 0; a < na; ++a)
      CHECK(std::abs(s.jm(a + 1, a).real() - spin_step_amplitude(na, a)) <
            1e-14);
  }
  // j = 1: both steps are sqrt(2).
  CHECK(spin_step_amplitude(2, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(spin_step_amplitude(2, 1) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("css_amplitudes match the frozen spot check (N_A=5)") {
  const Vec d = css_amplitudes(5, 0.9, 0.7);
  const cx ref[6] = {
      {5.919581772668273e-01, 0.0},
      {4.890401342259233e-01, 4.119128226385999e-01},
      {7.424193453761982e-02, 4.304461032616124e-01},
      {-1.065221579991771e-01, 1.821365435976208e-01},
      {-6.790722551129016e-02, 2.414304445392744e-02},
      {-1.458014769432127e-02, -5.461513957684190e-03},
  };
  for (int a = 0; a < 6; ++a) CHECK(std::abs(d(a) - ref[a]) < 1e-12);
}

TEST_CASE("css_amplitudes are normalized and handle the poles") {
  for (double th : {0.0, 0.3, kPi / 2, 2.7, kPi})
    for (double phi : {0.0, -1.2, 4.0}) {
      const Vec d = css_amplitudes(4, th, phi);
      CHECK(std::abs(d.squaredNorm() - 1.0) < 1e-12);
    }
  // theta = 0: fully excited |j, j> (a = 0); theta = pi: fully lowered.
  const Vec top = css_amplitudes(3, 0.0, 1.3);
  CHECK(std::abs(top(0) - cx(1, 0)) < 1e-15);
  CHECK(top.tail(3).cwiseAbs().maxCoeff() == 0.0);
  const Vec bot = css_amplitudes(3, kPi, 1.3);
  CHECK(std::abs(std::abs(bot(3)) - 1.0) < 1e-12);
  CHECK(bot.head(3).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("atom_state interpolates between pure and dephased") {
  atom_spec a;
  a.n_atoms = 4;
  a.polar_angle = 1.1;
  a.azimuthal_angle = -0.4;

  a.coherence_factor = 1.0;
  const Mat pure = atom_state(a);
  CHECK(std::abs(pure.trace() - cx(1, 0)) < 1e-12);
  CHECK((pure - pure.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs((pure * pure).trace().real() - 1.0) < 1e-12);  // pure

  a.coherence_factor = 0.0;
  const Mat deph = atom_state(a);
  Mat off = deph;
  off.diagonal().setZero();
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);  // strictly diagonal
  CHECK(std::abs(deph.trace() - cx(1, 0)) < 1e-12);

  // Same populations in both limits.
  CHECK((pure.diagonal() - deph.diagonal()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("cluster moments pin the phase convention") {
  // <Jz> = j cos(theta) for any c; <J-> = c j sin(theta) e^{-i phi}.
  const double th = 0.8, phi = 0.6;
  for (double c : {1.0, 0.37, 0.0}) {
    atom_spec a;
    a.n_atoms = 5;
    a.polar_angle = th;
    a.azimuthal_angle = phi;
    a.coherence_factor = c;
    const Mat rho = atom_state(a);
    const spin_ops s = make_spin_ops(5);
    const double j = 2.5;
    const cx jz = (rho * s.jz).trace();
    const cx jmn = (rho * s.jm).trace();
    CHECK(std::abs(jz - cx(j * std::cos(th), 0)) < 1e-12);
    const cx want = c * j * std::sin(th) * std::exp(cx(0, -phi));
    CHECK(std::abs(jmn - want) < 1e-12);
  }
}

TEST_CASE("spec validation rejects out-of-range parameters") {
  battery_spec b;
  b.n_levels_top = 0;
  CHECK_THROWS_AS(validate(b), error);
  b.n_levels_top = 5;
  b.energy_spacing = 0.0;
  CHECK_THROWS_AS(validate(b), error);
  b.energy_spacing = 1.0;
  CHECK_NOTHROW(validate(b));

  atom_spec a;
  a.n_atoms = 0;
  CHECK_THROWS_AS(validate(a), error);
  a.n_atoms = 2;
  a.polar_angle = -0.1;
  CHECK_THROWS_AS(validate(a), error);
  a.polar_angle = kPi + 0.1;
  CHECK_THROWS_AS(validate(a), error);
  a.polar_angle = 1.0;
  a.coherence_factor = 1.2;
  CHECK_THROWS_AS(validate(a), error);
  a.coherence_factor = -0.2;
  CHECK_THROWS_AS(validate(a), error);
  a.coherence_factor = 0.5;
  CHECK_NOTHROW(validate(a));
  try {
    a.polar_angle = 9.0;
    validate(a);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == status::invalid_argument);
  }
}
