#include "incoherent/construct.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "incoherent/bounds.hpp"
#include "incoherent/rng.hpp"
#include "incoherent/version.hpp"

namespace incoherent {

namespace {

ConstructionParams resolve(ConstructionParams p) {
  if (p.n < 2) throw std::invalid_argument("construct: N must be >= 2");
  if (p.s < 1) throw std::invalid_argument("construct: s must be >= 1");
  if (p.budget < 1) throw std::invalid_argument("construct: budget must be >= 1");
  if (p.m == 0) p.m = required_m(p.s, p.n);
  if (p.m < 2) throw std::invalid_argument("construct: m must be >= 2");
  if (p.threshold == 0.0) p.threshold = 1.0 / (2.0 * static_cast<double>(p.s));
  if (!(p.threshold > 0.0 && p.threshold < 1.0))
    throw std::invalid_argument("construct: threshold must lie in (0, 1)");
  return p;
}

}  // namespace

double candidate_coherence(const Eigen::VectorXd& y, const Eigen::MatrixXd& accepted) {
  if (accepted.cols() == 0) return 0.0;
  if (accepted.rows() != y.size())
    throw std::invalid_argument("candidate_coherence: dimension mismatch");
  return (accepted.transpose() * y).cwiseAbs().maxCoeff();
}

ConstructionResult construct(const ConstructionParams& raw) {
  const ConstructionParams p = resolve(raw);
  const auto t0 = std::chrono::steady_clock::now();

  ConstructionResult out;
  ConstructionReport& rep = out.report;
  rep.n = p.n;
  rep.s = p.s;
  rep.m = p.m;
  rep.budget = p.budget;
  rep.threshold = p.threshold;
  rep.seed = p.seed;
  rep.generator = kGeneratorId;
  rep.threshold_exceeds_recovery_condition =
      (p.threshold >= 1.0 / (2.0 * static_cast<double>(p.s) - 1.0));

  Rng rng(p.seed);
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(p.m, p.n);
  cols(0, 0) = 1.0;  // column 1 is e_1, no draw needed
  rep.attempts_per_column.push_back(1);
  rep.candidates_drawn = 1;

  bool failed = false;
  long accepted = 1;
  for (long j = 2; j <= p.n && !failed; ++j) {
    bool placed = false;
    for (long k = 1; k <= p.budget; ++k) {
      const Eigen::VectorXd y = sample_unit_vector(rng, static_cast<int>(p.m));
      ++rep.candidates_drawn;
      rep.inner_products_evaluated += static_cast<std::uint64_t>(j - 1);
      const double mu_y = candidate_coherence(y, cols.leftCols(accepted));
      if (mu_y <= p.threshold) {  // ties at the threshold are accepted
        cols.col(accepted) = y;
        ++accepted;
        rep.attempts_per_column.push_back(k);
        placed = true;
        break;
      }
    }
    if (!placed) {
      rep.attempts_per_column.push_back(p.budget);
      rep.failed_at_column = j;
      failed = true;
    }
  }

  if (!failed) {
    rep.success = true;
    out.matrix = SensingMatrix::from_columns(cols);
    // independent verification pass over the finished matrix
    rep.achieved_coherence = coherence(*out.matrix);
  } else if (accepted >= 2) {
    rep.achieved_coherence = coherence(SensingMatrix::from_columns(cols.leftCols(accepted)));
  } else {
    rep.achieved_coherence = 0.0;
  }

  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

ComplexityCheck verify_complexity_claim(const ConstructionReport& report) {
  ComplexityCheck c;
  const auto n = static_cast<std::uint64_t>(report.n);
  const auto m = static_cast<std::uint64_t>(report.m);
  const auto budget = static_cast<std::uint64_t>(report.budget);
  c.candidates_drawn = report.candidates_drawn;
  c.candidates_bound = budget * n;
  c.candidates_within_bound = (c.candidates_drawn <= c.candidates_bound);
  c.inner_products_evaluated = report.inner_products_evaluated;
  c.inner_products_bound = budget * n * (n - 1) / 2;
  c.inner_products_within_bound = (c.inner_products_evaluated <= c.inner_products_bound);
  c.stated_figure = 10 * m * n + n * (n - 1) / 2;
  return c;
}

}  // namespace incoherent
