#include "incoherent/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "incoherent/rng.hpp"

namespace incoherent {

namespace {

// Least-squares solve against a column subset, reporting the condition
// number of the subset as read off the rank-revealing QR diagonal.
struct SubsetSolve {
  Eigen::VectorXd coeffs;
  double residual_norm = 0.0;
  double condition = 0.0;
};

SubsetSolve solve_on_support(const Eigen::MatrixXd& a, const std::vector<long>& cols0,
                             const Eigen::VectorXd& b) {
  const long k = static_cast<long>(cols0.size());
  Eigen::MatrixXd sub(a.rows(), k);
  for (long j = 0; j < k; ++j) sub.col(j) = a.col(cols0[static_cast<size_t>(j)]);

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  SubsetSolve out;
  out.coeffs = qr.solve(b);
  out.residual_norm = (b - sub * out.coeffs).norm();
  // Column pivoting sorts the R diagonal by decreasing magnitude, so the
  // first/last ratio estimates the 2-norm condition of the subset.
  const auto diag = qr.matrixR().diagonal();
  const double lead = std::abs(diag(0));
  const double tail = std::abs(diag(k - 1));
  out.condition = (tail > 0.0) ? lead / tail : std::numeric_limits<double>::infinity();
  return out;
}

void require_rhs(const SensingMatrix& a, const Eigen::VectorXd& b, const char* who) {
  if (b.size() != a.rows()) {
    throw std::invalid_argument(std::string(who) + ": right-hand side has dimension " +
                                std::to_string(b.size()) + ", matrix has " +
                                std::to_string(a.rows()) + " rows");
  }
  if (!b.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": right-hand side has non-finite entries");
  }
}

constexpr double kDegenerateCondition = 1e12;

}  // namespace

Eigen::VectorXd SparseSignal::dense() const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (size_t i = 0; i < support.size(); ++i) x[support[i] - 1] = values[i];
  return x;
}

SparseSignal SparseSignal::make(long n, std::vector<long> support, std::vector<double> values) {
  if (n < 1) throw std::invalid_argument("SparseSignal: dimension must be >= 1");
  if (support.size() != values.size()) {
    throw std::invalid_argument("SparseSignal: support and value counts differ");
  }
  long prev = 0;
  for (long idx : support) {
    if (idx < 1 || idx > n) {
      throw std::invalid_argument("SparseSignal: index " + std::to_string(idx) +
                                  " outside [1, " + std::to_string(n) + "]");
    }
    if (idx <= prev) {
      throw std::invalid_argument("SparseSignal: support must be strictly increasing");
    }
    prev = idx;
  }
  for (double v : values) {
    if (!std::isfinite(v) || v == 0.0) {
      throw std::invalid_argument("SparseSignal: values must be finite and nonzero");
    }
  }
  SparseSignal s;
  s.n = n;
  s.support = std::move(support);
  s.values = std::move(values);
  return s;
}

RecoveryResult omp(const SensingMatrix& a, const Eigen::VectorXd& b, long s,
                   const SparseSignal* reference) {
  const long m = a.rows();
  const long n = a.cols();
  if (s < 1 || s > std::min(m, n)) {
    throw std::invalid_argument("omp: sparsity must lie in [1, min(m, N)]");
  }
  require_rhs(a, b, "omp");
  if (reference && reference->n != n) {
    throw std::invalid_argument("omp: reference signal dimension differs from N");
  }

  const Eigen::MatrixXd& mat = a.data();
  const double stop = 1e-12 * std::max(1.0, b.norm());

  RecoveryResult result;
  std::vector<long> picked0;  // 0-based, in pick order
  std::vector<bool> in_support(static_cast<size_t>(n), false);
  Eigen::VectorXd residual = b;
  Eigen::VectorXd coeffs;
  double worst_condition = 0.0;

  for (long iter = 0; iter < s; ++iter) {
    if (residual.norm() <= stop) break;

    // Greedy pick: column most correlated with the residual (first index on
    // ties), skipping columns already selected.
    const Eigen::VectorXd corr = mat.transpose() * residual;
    long best = -1;
    double best_abs = -1.0;
    for (long j = 0; j < n; ++j) {
      if (in_support[static_cast<size_t>(j)]) continue;
      const double c = std::abs(corr[j]);
      if (c > best_abs) {
        best_abs = c;
        best = j;
      }
    }
    if (best < 0 || best_abs <= stop) break;  // residual orthogonal to all remaining columns

    picked0.push_back(best);
    in_support[static_cast<size_t>(best)] = true;

    const SubsetSolve ls = solve_on_support(mat, picked0, b);
    coeffs = ls.coeffs;
    residual = b - [&] {
      Eigen::VectorXd fit = Eigen::VectorXd::Zero(m);
      for (size_t i = 0; i < picked0.size(); ++i) fit += coeffs[static_cast<long>(i)] * mat.col(picked0[i]);
      return fit;
    }();
    worst_condition = std::max(worst_condition, ls.condition);
  }

  result.degenerate = worst_condition > kDegenerateCondition;
  result.residual_norm = residual.norm();

  // Report the support sorted with coefficients aligned, indices 1-based.
  std::vector<size_t> order(picked0.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(),
            [&](size_t l, size_t r) { return picked0[l] < picked0[r]; });
  for (size_t pos : order) {
    result.support.push_back(picked0[pos] + 1);
    result.coefficients.push_back(coeffs[static_cast<long>(pos)]);
  }

  if (reference) {
    result.support_correct = result.support == reference->support;
    Eigen::VectorXd diff = reference->dense();
    for (size_t i = 0; i < result.support.size(); ++i) {
      diff[result.support[i] - 1] -= result.coefficients[i];
    }
    result.max_coefficient_error = diff.cwiseAbs().maxCoeff();
  }
  return result;
}

std::optional<SparseSignal> brute_force_l0(const SensingMatrix& a, const Eigen::VectorXd& b,
                                           long s_max) {
  const long n = a.cols();
  if (n > 20) {
    throw std::invalid_argument("brute_force_l0: N = " + std::to_string(n) +
                                " exceeds the exhaustive-search guard of 20 columns");
  }
  if (s_max < 0 || s_max > 3) {
    throw std::invalid_argument("brute_force_l0: s_max must lie in [0, 3]");
  }
  require_rhs(a, b, "brute_force_l0");

  const double tol = 1e-9 * std::max(1.0, b.norm());
  if (b.norm() <= tol) return SparseSignal::make(n, {}, {});

  const Eigen::MatrixXd& mat = a.data();
  for (long k = 1; k <= std::min(s_max, n); ++k) {
    // Lexicographic enumeration of all size-k supports.
    std::vector<long> comb0(static_cast<size_t>(k));
    std::iota(comb0.begin(), comb0.end(), 0L);
    while (true) {
      const SubsetSolve ls = solve_on_support(mat, comb0, b);
      if (ls.residual_norm <= tol) {
        std::vector<long> support;
        std::vector<double> values;
        for (long j = 0; j < k; ++j) {
          const double v = ls.coeffs[j];
          if (v == 0.0) continue;  // a padded support: keep only real entries
          support.push_back(comb0[static_cast<size_t>(j)] + 1);
          values.push_back(v);
        }
        return SparseSignal::make(n, std::move(support), std::move(values));
      }
      // Advance to the next combination.
      long i = k - 1;
      while (i >= 0 && comb0[static_cast<size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++comb0[static_cast<size_t>(i)];
      for (long j = i + 1; j < k; ++j) {
        comb0[static_cast<size_t>(j)] = comb0[static_cast<size_t>(j - 1)] + 1;
      }
    }
  }
  return std::nullopt;
}

RicEstimate ric_brute_force(const SensingMatrix& a, long s) {
  const long n = a.cols();
  if (s < 1 || s > n) throw std::invalid_argument("ric_brute_force: s must lie in [1, N]");

  // binomial(N, s) with early overflow cutoff; the guard keeps runs desk-scale.
  double count = 1.0;
  for (long i = 1; i <= s; ++i) {
    count *= static_cast<double>(n - s + i) / static_cast<double>(i);
    if (count > 2e6) break;
  }
  if (count > 1e6) {
    throw std::invalid_argument("ric_brute_force: binomial(N, s) ~ " + std::to_string(count) +
                                " exceeds the enumeration guard of 1e6 supports");
  }

  const GramMatrix g = gram(a);
  RicEstimate est;
  est.s = s;
  est.lambda_min = std::numeric_limits<double>::infinity();
  est.lambda_max = -std::numeric_limits<double>::infinity();

  std::vector<long> comb0(static_cast<size_t>(s));
  std::iota(comb0.begin(), comb0.end(), 0L);
  Eigen::MatrixXd sub(s, s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  while (true) {
    for (long r = 0; r < s; ++r) {
      for (long c = 0; c < s; ++c) {
        sub(r, c) = g.g(comb0[static_cast<size_t>(r)], comb0[static_cast<size_t>(c)]);
      }
    }
    eig.compute(sub, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo < est.lambda_min) {
      est.lambda_min = lo;
      est.argmin_support.clear();
      for (long idx : comb0) est.argmin_support.push_back(idx + 1);
    }
    if (hi > est.lambda_max) {
      est.lambda_max = hi;
      est.argmax_support.clear();
      for (long idx : comb0) est.argmax_support.push_back(idx + 1);
    }

    long i = s - 1;
    while (i >= 0 && comb0[static_cast<size_t>(i)] == n - s + i) --i;
    if (i < 0) break;
    ++comb0[static_cast<size_t>(i)];
    for (long j = i + 1; j < s; ++j) {
      comb0[static_cast<size_t>(j)] = comb0[static_cast<size_t>(j - 1)] + 1;
    }
  }

  est.delta = std::max({est.lambda_max - 1.0, 1.0 - est.lambda_min, 0.0});
  return est;
}

namespace {

long thread_cap_from_env(long trials) {
  long threads = 1;
  if (const char* env = std::getenv("INCOHERENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) threads = v;
  }
  return std::max(1L, std::min(threads, trials));
}

struct TrialOutcome {
  bool success = false;
  double coeff_error = 0.0;
};

TrialOutcome run_recovery_trial(const SensingMatrix& a, long s, std::uint64_t trial_seed) {
  const long n = a.cols();
  Rng rng(trial_seed);

  // Uniform size-s support via a partial Fisher-Yates shuffle of 1..N.
  std::vector<long> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 1L);
  for (long t = 0; t < s; ++t) {
    const long r = t + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n - t)));
    std::swap(pool[static_cast<size_t>(t)], pool[static_cast<size_t>(r)]);
  }
  std::vector<long> support(pool.begin(), pool.begin() + s);
  std::sort(support.begin(), support.end());

  // Standard normal coefficients, redrawn while negligibly small so that the
  // planted support is unambiguous.
  std::vector<double> values(static_cast<size_t>(s));
  for (double& v : values) {
    do {
      v = rng.next_gaussian();
    } while (std::abs(v) < 1e-6);
  }

  const SparseSignal x = SparseSignal::make(n, std::move(support), std::move(values));
  const Eigen::VectorXd b = a.data() * x.dense();
  const RecoveryResult rec = omp(a, b, s, &x);

  TrialOutcome out;
  out.success = rec.support_correct && !rec.degenerate;
  out.coeff_error = rec.max_coefficient_error.value();
  return out;
}

}  // namespace

ExperimentSummary recovery_experiment(const SensingMatrix& a, long s, long trials,
                                      std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("recovery_experiment: trials must be >= 1");
  if (s < 1 || s > std::min(a.rows(), a.cols())) {
    throw std::invalid_argument("recovery_experiment: sparsity must lie in [1, min(m, N)]");
  }

  std::vector<TrialOutcome> outcomes(static_cast<size_t>(trials));
  const long threads = thread_cap_from_env(trials);
  if (threads == 1) {
    for (long i = 0; i < trials; ++i) {
      outcomes[static_cast<size_t>(i)] = run_recovery_trial(a, s, substream_seed(seed, static_cast<std::uint64_t>(i)));
    }
  } else {
    // Trial k always uses substream k and lands in slot k, so the summary is
    // byte-identical whatever the worker count.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    for (long w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (long i = w; i < trials; i += threads) {
            outcomes[static_cast<size_t>(i)] =
                run_recovery_trial(a, s, substream_seed(seed, static_cast<std::uint64_t>(i)));
          }
        } catch (...) {
          errors[static_cast<size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  ExperimentSummary summary;
  summary.matrix_sha256 = a.sha256_hex();
  summary.s = s;
  summary.trials = trials;
  summary.seed = seed;
  summary.coherence = coherence(a);
  summary.condition_held = summary.coherence < 1.0 / (2.0 * static_cast<double>(s) - 1.0);
  for (const TrialOutcome& out : outcomes) {
    if (out.success) ++summary.successes;
    summary.worst_coeff_error = std::max(summary.worst_coeff_error, out.coeff_error);
  }
  summary.success_rate = static_cast<double>(summary.successes) / static_cast<double>(trials);
  return summary;
}

CapEstimate monte_carlo_cap(long m, double t, long samples, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("monte_carlo_cap: dimension must be >= 2");
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("monte_carlo_cap: threshold must lie in (0, 1)");
  }
  if (samples < 1000) throw std::invalid_argument("monte_carlo_cap: need at least 1000 samples");

  Rng rng(seed);
  Eigen::VectorXd y(m);
  long hits = 0;
  for (long i = 0; i < samples; ++i) {
    fill_unit_vector(rng, y);
    if (std::abs(y[0]) >= t) ++hits;
  }

  CapEstimate est;
  est.m = m;
  est.t = t;
  est.samples = samples;
  est.seed = seed;
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.standard_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

}  // namespace incoherent
