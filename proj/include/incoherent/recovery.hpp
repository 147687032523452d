#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "incoherent/matrix.hpp"

namespace incoherent {

/// Sparse vector given by (1-based) support indices and their nonzero
/// values. Column indices are 1-based on every public surface of this
/// toolkit, matching the convention that column 1 of a constructed matrix
/// is e_1.
struct SparseSignal {
  long n = 0;
  std::vector<long> support;   // strictly increasing, within [1, n]
  std::vector<double> values;  // nonzero, one per support index

  Eigen::VectorXd dense() const;

  /// Validates and builds; throws std::invalid_argument on out-of-range or
  /// duplicate indices, zero or non-finite values, or length mismatch.
  static SparseSignal make(long n, std::vector<long> support, std::vector<double> values);
};

struct RecoveryResult {
  std::vector<long> support;        // sorted, 1-based
  std::vector<double> coefficients; // aligned with support
  double residual_norm = 0.0;
  bool degenerate = false;  // least-squares submatrix condition above 1e12
  // filled when a reference signal is supplied:
  bool support_correct = false;
  std::optional<double> max_coefficient_error;  // L-inf distance to reference
};

/// Orthogonal matching pursuit: up to s iterations of (pick the column most
/// correlated with the residual, re-solve least squares on the picked set,
/// update the residual). Stops early once the residual is negligible, so
/// b = 0 recovers the empty support. Requires s <= min(m, N) and finite b.
RecoveryResult omp(const SensingMatrix& a, const Eigen::VectorXd& b, long s,
                   const SparseSignal* reference = nullptr);

/// Exhaustive minimum-support solve of A x = b: enumerates supports of size
/// 0, 1, ..., s_max in lexicographic order and returns the first whose
/// least-squares residual is within 1e-9 * max(1, ||b||). nullopt when no
/// support of size <= s_max fits. Desk-scale guard: N <= 20 and s_max <= 3.
std::optional<SparseSignal> brute_force_l0(const SensingMatrix& a, const Eigen::VectorXd& b,
                                           long s_max);

/// Exact restricted isometry constant of order s, by enumerating every
/// size-s column submatrix.
struct RicEstimate {
  long s = 0;
  double delta = 0.0;
  double lambda_min = 0.0;  // smallest Gram eigenvalue seen
  double lambda_max = 0.0;  // largest Gram eigenvalue seen
  std::vector<long> argmin_support;  // support achieving lambda_min
  std::vector<long> argmax_support;  // support achieving lambda_max
};

/// Guard: binomial(N, s) must not exceed 10^6; the error message carries the
/// computed count.
RicEstimate ric_brute_force(const SensingMatrix& a, long s);

/// Outcome of many random s-sparse recovery trials on one matrix.
struct ExperimentSummary {
  std::string matrix_sha256;  // of the canonical text serialization
  long s = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
  double worst_coeff_error = 0.0;
  bool condition_held = false;  // coherence < 1/(2s - 1)
  long successes = 0;
  double coherence = 0.0;
};

/// Draws `trials` random s-sparse signals (uniform supports; standard normal
/// values, redrawn while |v| < 1e-6), runs omp on each, and reports the
/// exact-support success rate. Trial k uses the substream
/// substream_seed(seed, k), so the summary is deterministic and independent
/// of execution order; INCOHERENT_THREADS caps the worker count.
ExperimentSummary recovery_experiment(const SensingMatrix& a, long s, long trials,
                                      std::uint64_t seed);

struct CapEstimate {
  long m = 0;
  double t = 0.0;
  long samples = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double standard_error = 0.0;  // binomial, sqrt(p(1-p)/n)
};

/// Monte Carlo measure of the two caps |<y, e_1>| >= t for uniform unit y in
/// dimension m; the empirical cross-check for cap_measure_exact.
/// Requires samples >= 1000.
CapEstimate monte_carlo_cap(long m, double t, long samples, std::uint64_t seed);

}  // namespace incoherent
