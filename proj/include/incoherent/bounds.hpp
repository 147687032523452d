#pragma once

#include <cstdint>
#include <optional>

namespace incoherent {

/// Welch lower bound sqrt((N - m) / ((N - 1) m)) on the coherence of any
/// m x N unit-column matrix, clamped to 0 when m >= N (the formula's
/// radicand goes negative there and the bound is vacuous). Requires N >= 2.
double welch_bound(long m, long n);

/// Measurement count ceil(8 s^2 ln(2 s N / pi)) + 2 that the construction
/// sizes itself to. Throws when 2sN <= pi (only s = N = 1), where the
/// logarithm degenerates; callers must supply N >= 2.
long required_m(long s, long n);

/// Upper bound 2s (1 - 1/(2s)^2)^((m-1)/2) / (2 pi) on the probability that
/// a fresh uniform unit vector lands within 1/(2s) of a fixed unit vector
/// in dimension m (evaluated in the log domain; exact counterpart in
/// cap_measure_exact). Requires s >= 1, m >= 2.
double pair_reject_bound(long s, long m);

/// Probability that a uniform unit vector y in dimension m has
/// |<y, x>| >= t for a fixed unit x: the measure of two spherical caps,
/// I_{1-t^2}((m-1)/2, 1/2). Requires m >= 2 and t in (0, 1).
double cap_measure_exact(long m, double t);

/// V_{m-1} / A_m: unit-ball volume in dimension m-1 over unit-sphere
/// surface area in dimension m, i.e. Gamma(m/2) / (2 sqrt(pi) Gamma((m+1)/2)).
double sphere_volume_surface_ratio(long m);

/// Lower bounds on the probability that a candidate for the column after j
/// accepted ones is accepted within the attempt budget.
struct ColumnSuccessBound {
  double closed_form;  // 1 - (j / (2N))^10, the literal exponent-10 form
  double chain_form;   // 1 - (j * pair_reject_bound(s, m))^budget, clamped to [0, 1]
};

/// Requires 0 <= j <= N (j = 0 is the vacuous case), s >= 1, m >= 2,
/// budget >= 1.
ColumnSuccessBound column_success_bound(long j, long s, long m, long n, long budget = 10);

/// The constant implied by the width bound m >= C ln(N) (1/mu)^2 / ln(1/mu):
/// returns m ln(1/mu) / (ln(N) (1/mu)^2). Requires mu in (0, 1), N >= 3,
/// m >= 1.
double width_ratio(long m, long n, double mu);

/// Everything closed-form for one (s, N, m) triple, including each link of
/// the per-pair rejection chain so the claimed inequalities can be checked
/// numerically instead of assumed:
///
///   pair_reject_exact  <=?  pair_reject_volume_form  <=?  pair_reject_bound
///   pair_reject_bound  <=?  pair_reject_target (= 1/(2N), what the
///   exponent-10 closed form needs)
///
/// The middle link holds iff vol_surface_ratio <= 1/(2 pi), which is false
/// for m <= 6; the first link fails for s = 1 at small m. The booleans
/// record what actually holds at this (s, m, N).
struct BoundsReport {
  long s = 0;
  long n = 0;
  long m = 0;
  double welch = 0.0;
  bool welch_vacuous = false;  // m >= N: formula clamped to 0
  long required_m = 0;
  double threshold = 0.0;  // 1 / (2s)

  double pair_reject_exact = 0.0;        // cap_measure_exact(m, threshold)
  double pair_reject_volume_form = 0.0;  // 2s (...)^((m-1)/2) * V_{m-1}/A_m
  double pair_reject_bound = 0.0;        // 2s (...)^((m-1)/2) / (2 pi)
  double pair_reject_target = 0.0;       // 1 / (2N)
  double vol_surface_ratio = 0.0;
  bool exact_le_volume_form = false;
  bool volume_form_le_bound = false;
  bool bound_le_target = false;

  double column_success_bound_worst = 0.0;        // closed form at j = N
  double column_success_bound_worst_chain = 0.0;  // chain form at j = N, budget 10
  double width_ratio = 0.0;                       // at mu = threshold
  bool width_ratio_defined = false;               // requires N >= 3
};

/// Builds the full report; m defaults to required_m(s, N). Requires s >= 1,
/// N >= 2, and m >= 2 when given.
BoundsReport make_bounds_report(long s, long n, std::optional<long> m = std::nullopt);

}  // namespace incoherent
