#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace incoherent {

/// Thrown when a matrix file cannot be parsed; the message names the first
/// offending line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense m x N sensing matrix with unit-norm columns, stored column-major.
///
/// The unit-norm discipline is enforced at every entry point: a column whose
/// Euclidean norm deviates from 1 by at most 1e-12 is accepted as-is, a
/// deviation below 1e-6 is silently renormalized, and anything worse (or any
/// non-finite entry) is rejected. Instances are immutable after creation and
/// safe to share across threads.
class SensingMatrix {
 public:
  /// Builds from raw column data, applying the unit-norm policy.
  /// Throws std::invalid_argument on empty input, non-finite entries, or a
  /// column norm deviating from 1 by 1e-6 or more.
  static SensingMatrix from_columns(Eigen::MatrixXd columns);

  /// Parses the text format:
  ///   line 1: "m N" (optionally preceded by '#' comment lines),
  ///   then m rows of N whitespace-separated decimal values.
  /// Throws ParseError naming the first bad line.
  static SensingMatrix parse(std::istream& in);
  static SensingMatrix load_file(const std::string& path);

  /// Canonical text serialization: "m N" header then m rows printed with 17
  /// significant digits, which round-trips every IEEE double exactly.
  std::string to_text() const;
  void store(std::ostream& out) const;
  void store_file(const std::string& path) const;

  /// SHA-256 (lowercase hex) of the canonical text serialization.
  std::string sha256_hex() const;

  long rows() const { return a_.rows(); }
  long cols() const { return a_.cols(); }
  const Eigen::MatrixXd& data() const { return a_; }
  Eigen::VectorXd column(long j) const { return a_.col(j); }

 private:
  explicit SensingMatrix(Eigen::MatrixXd a) : a_(std::move(a)) {}
  Eigen::MatrixXd a_;
};

/// Symmetric N x N matrix of pairwise column inner products.
struct GramMatrix {
  Eigen::MatrixXd g;
  long size() const { return g.rows(); }
};

/// Pairwise inner products of the columns of A. Entry (i, j) is
/// <col_i, col_j>; exact transpose symmetry is enforced by construction.
GramMatrix gram(const SensingMatrix& a);

/// Mutual incoherence: the largest absolute normalized inner product over
/// distinct column pairs, clamped to [0, 1]. Zero for a single column.
double coherence(const SensingMatrix& a);

/// Largest sparsity s with mu < 1/(2s - 1); 0 when mu >= 1. Returns nullopt
/// for mu == 0 (no limit from this criterion: orthonormal columns). Throws
/// std::invalid_argument for mu < 0 or mu > 1.
std::optional<long> max_recoverable_sparsity(double mu);

}  // namespace incoherent
