#include "incoherent/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace incoherent {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Continued fraction for the regularized incomplete beta function
// (modified Lentz); converges quickly for x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int it = 1; it <= kMaxIter; ++it) {
    const double m = it;
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

// I_x(a, b) for a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double welch_bound(long m, long n) {
  if (n < 2) throw std::invalid_argument("welch_bound: N must be >= 2");
  if (m < 1) throw std::invalid_argument("welch_bound: m must be >= 1");
  if (m >= n) return 0.0;
  return std::sqrt(static_cast<double>(n - m) /
                   (static_cast<double>(n - 1) * static_cast<double>(m)));
}

long required_m(long s, long n) {
  if (s < 1 || n < 1) throw std::invalid_argument("required_m: need s >= 1 and N >= 1");
  const long double arg = 2.0L * static_cast<long double>(s) * static_cast<long double>(n) /
                          3.14159265358979323846264338327950288L;
  if (arg <= 1.0L)
    throw std::invalid_argument(
        "required_m: 2sN/pi <= 1 (s = N = 1) makes the logarithm nonpositive; supply N >= 2");
  const long double v =
      8.0L * static_cast<long double>(s) * static_cast<long double>(s) * std::log(arg);
  return static_cast<long>(std::ceil(v)) + 2;
}

double pair_reject_bound(long s, long m) {
  if (s < 1) throw std::invalid_argument("pair_reject_bound: s must be >= 1");
  if (m < 2) throw std::invalid_argument("pair_reject_bound: m must be >= 2");
  const double t = 1.0 / (2.0 * static_cast<double>(s));
  const double log_val = std::log(2.0 * static_cast<double>(s)) +
                         0.5 * static_cast<double>(m - 1) * std::log1p(-t * t) -
                         std::log(2.0 * kPi);
  return std::exp(log_val);
}

double cap_measure_exact(long m, double t) {
  if (m < 2) throw std::invalid_argument("cap_measure_exact: m must be >= 2");
  if (!(t > 0.0 && t < 1.0))
    throw std::invalid_argument("cap_measure_exact: t must lie in (0, 1)");
  // <y, x>^2 for uniform y follows Beta(1/2, (m-1)/2); the two-cap measure
  // is the upper tail at t^2.
  return reg_inc_beta(0.5 * static_cast<double>(m - 1), 0.5, 1.0 - t * t);
}

double sphere_volume_surface_ratio(long m) {
  if (m < 2) throw std::invalid_argument("sphere_volume_surface_ratio: m must be >= 2");
  const double half_m = 0.5 * static_cast<double>(m);
  return std::exp(std::lgamma(half_m) - std::lgamma(half_m + 0.5)) / (2.0 * std::sqrt(kPi));
}

ColumnSuccessBound column_success_bound(long j, long s, long m, long n, long budget) {
  if (j < 0 || j > n)
    throw std::invalid_argument("column_success_bound: j must lie in [0, N]");
  if (n < 1) throw std::invalid_argument("column_success_bound: N must be >= 1");
  if (budget < 1) throw std::invalid_argument("column_success_bound: budget must be >= 1");
  ColumnSuccessBound out;
  const double frac = static_cast<double>(j) / (2.0 * static_cast<double>(n));
  out.closed_form = clamp01(1.0 - std::pow(frac, 10.0));
  const double per_draw = static_cast<double>(j) * pair_reject_bound(s, m);
  out.chain_form = clamp01(1.0 - std::pow(per_draw, static_cast<double>(budget)));
  return out;
}

double width_ratio(long m, long n, double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("width_ratio: mu must lie in (0, 1)");
  if (n < 3) throw std::invalid_argument("width_ratio: N must be >= 3");
  if (m < 1) throw std::invalid_argument("width_ratio: m must be >= 1");
  const double inv_mu = 1.0 / mu;
  return static_cast<double>(m) * std::log(inv_mu) /
         (std::log(static_cast<double>(n)) * inv_mu * inv_mu);
}

BoundsReport make_bounds_report(long s, long n, std::optional<long> m_opt) {
  if (s < 1) throw std::invalid_argument("bounds report: s must be >= 1");
  if (n < 2) throw std::invalid_argument("bounds report: N must be >= 2");
  BoundsReport r;
  r.s = s;
  r.n = n;
  r.required_m = required_m(s, n);
  r.m = m_opt.value_or(r.required_m);
  if (r.m < 2) throw std::invalid_argument("bounds report: m must be >= 2");
  r.welch = welch_bound(r.m, n);
  r.welch_vacuous = (r.m >= n);
  r.threshold = 1.0 / (2.0 * static_cast<double>(s));

  r.pair_reject_exact = cap_measure_exact(r.m, r.threshold);
  r.vol_surface_ratio = sphere_volume_surface_ratio(r.m);
  const double shrink =
      std::exp(0.5 * static_cast<double>(r.m - 1) * std::log1p(-r.threshold * r.threshold));
  r.pair_reject_volume_form = 2.0 * static_cast<double>(s) * shrink * r.vol_surface_ratio;
  r.pair_reject_bound = pair_reject_bound(s, r.m);
  r.pair_reject_target = 1.0 / (2.0 * static_cast<double>(n));
  r.exact_le_volume_form = (r.pair_reject_exact <= r.pair_reject_volume_form);
  r.volume_form_le_bound = (r.pair_reject_volume_form <= r.pair_reject_bound);
  r.bound_le_target = (r.pair_reject_bound <= r.pair_reject_target);

  const ColumnSuccessBound worst = column_success_bound(n, s, r.m, n, 10);
  r.column_success_bound_worst = worst.closed_form;
  r.column_success_bound_worst_chain = worst.chain_form;

  if (n >= 3) {
    r.width_ratio = width_ratio(r.m, n, r.threshold);
    r.width_ratio_defined = true;
  }
  return r;
}

}  // namespace incoherent
