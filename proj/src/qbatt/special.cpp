// special.cpp — Bessel J1, Catalan numbers, vacuum moments, quadrature.

#include "qbatt/special.hpp"

#include <cmath>
#include <vector>

#include "qbatt/errors.hpp"

namespace qbatt {

namespace {

// Ascending power series J1(x) = (x/2) sum_k (-x^2/4)^k / (k! (k+1)!).
// Worst cancellation at the |x| = 12 boundary still leaves ~1e-12 absolute.
double j1_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<double>(k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return 0.5 * x * sum;
}

// Hankel asymptotic expansion for x > 12:
//   J1(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],  chi = x - 3 pi/4,
// with P/Q the even/odd parts of sum_k a_k, a_k = a_{k-1} (mu - (2k-1)^2)/(8 x k),
// mu = 4. Terms shrink well past 1e-12 before the series turns at this range.
double j1_asymptotic(double x) {
  const double mu = 4.0;
  double p = 1.0, q = 0.0, term = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * x * k);
    if (std::abs(term) < 1e-17) break;
    if (k % 2) {
      q += (k % 4 == 1) ? term : -term;   // +a1, -a3, +a5, ...
    } else {
      p += (k % 4 == 2) ? -term : term;   // -a2, +a4, -a6, ...
    }
  }
  const double chi = x - 2.356194490192344928846982537459627163;  // 3 pi / 4
  return std::sqrt(2.0 / (3.14159265358979323846 * x)) *
         (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  const double ax = std::abs(x);
  const double v = ax <= 12.0 ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0 ? -v : v;  // J1 is odd
}

double vacuum_overlap(double y) {
  // J1(2y)/y; series form below 1e-4 avoids the 0/0.
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - 0.5 * y2 + y2 * y2 / 12.0;
  }
  return bessel_j1(2.0 * y) / y;
}

std::uint64_t catalan(int n) {
  if (n < 0 || n > 36)
    fail(status::invalid_argument,
         "catalan: n must lie in [0, 36] (C_37 exceeds 64 bits)");
  unsigned __int128 c = 1;
  for (int i = 0; i < n; ++i)
    c = c * 2 * (2 * static_cast<unsigned __int128>(i) + 1) / (i + 2);
  return static_cast<std::uint64_t>(c);
}

double vacuum_moment(int n, std::complex<double> alpha) {
  const double a2 = std::norm(alpha);
  const double cn = static_cast<double>(catalan(n));
  return (n % 2 ? -1.0 : 1.0) * std::pow(a2, n) * cn;
}

namespace {

// Gauss-Kronrod 7-15 nodes/weights (positive half; node 7 is the origin).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct gk_result {
  double value;
  double error;
};

gk_result gk15(const std::function<double(double)>& fn, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double f0 = fn(c);
  double kron = kWgk[7] * f0;
  double gauss = kWg[3] * f0;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double s = fn(c - dx) + fn(c + dx);
    kron += kWgk[i] * s;
    if (i % 2) gauss += kWg[i / 2] * s;  // nodes 1,3,5 are the G7 nodes
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

void gk_adapt(const std::function<double(double)>& fn, double a, double b,
              double tol, int depth, double* acc) {
  const gk_result r = gk15(fn, a, b);
  if (r.error <= tol || depth >= 48) {
    *acc += r.value;
    return;
  }
  const double m = 0.5 * (a + b);
  gk_adapt(fn, a, m, 0.5 * tol, depth + 1, acc);
  gk_adapt(fn, m, b, 0.5 * tol, depth + 1, acc);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& fn, double a,
                    double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  // Pre-split long ranges so oscillatory integrands start well resolved.
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / 4.0)));
  double total = 0.0;
  const double per = abs_tol / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels;
    const double hi = a + (b - a) * (i + 1) / panels;
    gk_adapt(fn, lo, hi, per, 0, &total);
  }
  return total;
}

}  // namespace qbatt
