#include <cmath>
#include <numeric>
#include <thread>

#include <doctest.h>

#include "incoherent/bounds.hpp"
#include "incoherent/construct.hpp"
#include "incoherent/matrix.hpp"
#include "incoherent/version.hpp"

using incoherent::candidate_coherence;
using incoherent::construct;
using incoherent::ConstructionParams;
using incoherent::ConstructionResult;
using incoherent::verify_complexity_claim;

namespace {

ConstructionParams params(long n, long s, long m, std::uint64_t seed) {
  ConstructionParams p;
  p.n = n;
  p.s = s;
  p.m = m;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("candidate_coherence: empty set, self, worked example") {
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
  e1[0] = 1.0;
  CHECK(candidate_coherence(e1, Eigen::MatrixXd(3, 0)) == 0.0);
  CHECK(candidate_coherence(e1, e1) == 1.0);

  // y = (e1 + e2)/sqrt2 against {e1, e3}
  Eigen::VectorXd y = Eigen::VectorXd::Zero(3);
  y[0] = y[1] = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd accepted = Eigen::MatrixXd::Zero(3, 2);
  accepted(0, 0) = 1.0;
  accepted(2, 1) = 1.0;
  CHECK(candidate_coherence(y, accepted) == doctest::Approx(0.70710678).epsilon(1e-8));

  Eigen::VectorXd wrong_dim = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(candidate_coherence(wrong_dim, accepted), std::invalid_argument);
}

TEST_CASE("construction succeeds at the sized m and passes the independent coherence check") {
  const ConstructionResult r = construct(params(200, 2, 0, 1));
  REQUIRE(r.report.success);
  REQUIRE(r.matrix.has_value());
  CHECK(r.report.m == 180);  // defaulted to the sizing rule
  CHECK(r.report.threshold == 0.25);
  CHECK(!r.report.threshold_exceeds_recovery_condition);
  CHECK(r.report.generator == incoherent::kGeneratorId);

  // end-to-end: the full pairwise pass agrees with the incremental accounting
  const double mu = incoherent::coherence(*r.matrix);
  CHECK(mu == r.report.achieved_coherence);
  CHECK(mu <= 0.25 + 1e-12);

  // column 1 is e1 exactly, accepted without sampling
  CHECK(r.matrix->column(0)[0] == 1.0);
  CHECK(r.matrix->column(0).tail(179).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(r.report.attempts_per_column.size() == 200);
  CHECK(r.report.attempts_per_column[0] == 1);

  // every accepted column has unit norm
  for (long j = 0; j < 200; ++j) {
    CHECK(std::abs(r.matrix->column(j).norm() - 1.0) <= 1e-12);
  }

  // candidates_drawn = sum of attempts on success
  const long total = std::accumulate(r.report.attempts_per_column.begin(),
                                     r.report.attempts_per_column.end(), 0L);
  CHECK(r.report.candidates_drawn == static_cast<std::uint64_t>(total));
  for (long a : r.report.attempts_per_column) {
    CHECK(a >= 1);
    CHECK(a <= r.report.budget);
  }
}

TEST_CASE("two-column toy case: always succeeds, coherence below a half") {
  for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 12345ULL}) {
    const ConstructionResult r = construct(params(2, 1, 3, seed));
    REQUIRE(r.report.success);
    CHECK(incoherent::coherence(*r.matrix) <= 0.5 + 1e-12);
    CHECK(r.matrix->column(0)[0] == 1.0);
  }
}

TEST_CASE("construction is bit-identical on replay, also across threads") {
  const ConstructionParams p = params(40, 2, 135, 77);
  const ConstructionResult a = construct(p);
  const ConstructionResult b = construct(p);
  REQUIRE(a.report.success);
  CHECK(a.matrix->data() == b.matrix->data());  // exact, no tolerance
  CHECK(a.report.attempts_per_column == b.report.attempts_per_column);
  CHECK(a.report.candidates_drawn == b.report.candidates_drawn);
  CHECK(a.report.inner_products_evaluated == b.report.inner_products_evaluated);
  CHECK(a.report.achieved_coherence == b.report.achieved_coherence);

  // concurrent runs with the same params cannot interfere
  std::string sha[2];
  std::thread t0([&] { sha[0] = construct(p).matrix->sha256_hex(); });
  std::thread t1([&] { sha[1] = construct(p).matrix->sha256_hex(); });
  t0.join();
  t1.join();
  CHECK(sha[0] == sha[1]);
  CHECK(sha[0] == a.matrix->sha256_hex());
}

TEST_CASE("prefix property: same seed and pinned m extends column-by-column") {
  // The sampling stream only depends on (m, threshold, budget, seed) and the
  // accepted prefix, so growing N keeps the earlier columns unchanged.
  const ConstructionResult small = construct(params(30, 2, 135, 5));
  const ConstructionResult large = construct(params(60, 2, 135, 5));
  REQUIRE(small.report.success);
  REQUIRE(large.report.success);
  CHECK(large.matrix->data().leftCols(30) == small.matrix->data());
  for (int j = 0; j < 30; ++j) {
    CHECK(small.report.attempts_per_column[j] == large.report.attempts_per_column[j]);
  }
}

TEST_CASE("an impossible threshold reports failure with saturated attempts") {
  ConstructionParams p = params(3, 1, 2, 9);
  p.threshold = 1e-9;  // nearly the whole sphere is within the cap
  const ConstructionResult r = construct(p);
  CHECK(!r.report.success);
  CHECK(!r.matrix.has_value());
  CHECK((r.report.failed_at_column == 2 || r.report.failed_at_column == 3));
  CHECK(r.report.attempts_per_column.back() == r.report.budget);
  // partial work is still accounted
  CHECK(r.report.candidates_drawn >= static_cast<std::uint64_t>(r.report.budget));
  CHECK(r.report.inner_products_evaluated >= static_cast<std::uint64_t>(r.report.budget));
}

TEST_CASE("failure at a starved m, success trace flags loose thresholds") {
  const ConstructionResult starved = construct(params(200, 2, 5, 1));
  CHECK(!starved.report.success);
  CHECK(starved.report.failed_at_column >= 2);

  ConstructionParams loose = params(12, 2, 40, 3);
  loose.threshold = 0.5;  // 0.5 >= 1/(2s-1) = 1/3: beyond the recovery condition
  const ConstructionResult r = construct(loose);
  CHECK(r.report.threshold_exceeds_recovery_condition);
  CHECK(r.report.threshold == 0.5);
}

TEST_CASE("parameter validation precedes sampling") {
  CHECK_THROWS_AS(construct(params(1, 2, 20, 0)), std::invalid_argument);  // N < 2
  CHECK_THROWS_AS(construct(params(10, 0, 20, 0)), std::invalid_argument);
  ConstructionParams bad_budget = params(10, 1, 20, 0);
  bad_budget.budget = 0;
  CHECK_THROWS_AS(construct(bad_budget), std::invalid_argument);
  ConstructionParams bad_threshold = params(10, 1, 20, 0);
  bad_threshold.threshold = 1.5;
  CHECK_THROWS_AS(construct(bad_threshold), std::invalid_argument);
  ConstructionParams bad_m = params(10, 1, 1, 0);
  CHECK_THROWS_AS(construct(bad_m), std::invalid_argument);  // m must be >= 2
}

TEST_CASE("work counters: first-attempt run yields the exact pairwise floor") {
  // At m = 100, N = 10 the caps are so small every candidate is accepted on
  // its first draw, so column j contributes exactly j - 1 inner products.
  const ConstructionResult r = construct(params(10, 1, 100, 4));
  REQUIRE(r.report.success);
  const incoherent::ComplexityCheck check = verify_complexity_claim(r.report);
  CHECK(check.candidates_drawn == 10);
  CHECK(check.inner_products_evaluated == 45);  // N(N-1)/2
  CHECK(check.candidates_bound == 100);         // budget * N
  CHECK(check.inner_products_bound == 450);     // budget * N(N-1)/2
  CHECK(check.candidates_within_bound);
  CHECK(check.inner_products_within_bound);
  CHECK(check.stated_figure == 10ULL * 100 * 10 + 45);
}

TEST_CASE("per-candidate acceptance rate respects the union-bound floor") {
  // Accept probability for a candidate against j accepted columns is at
  // least 1 - j * cap_measure_exact(m, threshold). Aggregate over seeds and
  // compare at 3 sigma of the binomial count.
  const long m = 135;
  const long n = 12;
  const double cap = incoherent::cap_measure_exact(m, 0.25);
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    ConstructionParams p = params(n, 2, m, seed);
    p.budget = 200;  // keep failures out of the tally
    const ConstructionResult r = construct(p);
    REQUIRE(r.report.success);
    candidates += r.report.candidates_drawn - 1;       // fixed first column
    accepted += static_cast<std::uint64_t>(n) - 1;
  }
  const double floor = 1.0 - static_cast<double>(n - 1) * cap;  // worst column
  const double rate = static_cast<double>(accepted) / static_cast<double>(candidates);
  const double sigma = std::sqrt(rate * (1.0 - rate) / static_cast<double>(candidates));
  CHECK(rate >= floor - 3.0 * sigma);
}
