#include "incoherent/matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "incoherent/sha256.hpp"

namespace incoherent {

namespace {

constexpr double kKeepTol = 1e-12;   // norm deviation accepted as-is
constexpr double kFixTol = 1e-6;     // renormalized below this, rejected beyond

void enforce_unit_columns(Eigen::MatrixXd& a) {
  if (a.rows() < 1 || a.cols() < 1)
    throw std::invalid_argument("sensing matrix must have at least one row and one column");
  if (!a.allFinite())
    throw std::invalid_argument("sensing matrix entries must be finite");
  for (long j = 0; j < a.cols(); ++j) {
    const double norm = a.col(j).norm();
    const double dev = std::abs(norm - 1.0);
    if (dev <= kKeepTol) continue;
    if (dev < kFixTol) {
      a.col(j) /= norm;
    } else {
      throw std::invalid_argument("column " + std::to_string(j + 1) +
                                  " has norm " + std::to_string(norm) +
                                  ", too far from 1 to renormalize");
    }
  }
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void bad_line(long lineno, const std::string& what) {
  throw ParseError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

SensingMatrix SensingMatrix::from_columns(Eigen::MatrixXd columns) {
  enforce_unit_columns(columns);
  return SensingMatrix(std::move(columns));
}

SensingMatrix SensingMatrix::parse(std::istream& in) {
  std::string line;
  long lineno = 0;
  // comment lines are allowed before the header only
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line[0] == '#') continue;
    break;
  }
  if (lineno == 0 || (in.fail() && line.empty()))
    throw ParseError("line 1: empty file, expected \"m N\" header");

  long m = 0, n = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> m >> n) || (hs >> extra))
      bad_line(lineno, "expected header \"m N\" with two integers, got \"" + line + "\"");
    if (m < 1 || n < 1)
      bad_line(lineno, "dimensions must be positive, got m=" + std::to_string(m) +
                           " N=" + std::to_string(n));
  }

  Eigen::MatrixXd a(m, n);
  for (long i = 0; i < m; ++i) {
    if (!std::getline(in, line))
      bad_line(lineno + i + 1, "unexpected end of file, expected row " +
                                   std::to_string(i + 1) + " of " + std::to_string(m));
    std::istringstream rs(line);
    for (long j = 0; j < n; ++j) {
      double v;
      if (!(rs >> v))
        bad_line(lineno + i + 1, "expected " + std::to_string(n) +
                                     " values in row " + std::to_string(i + 1));
      a(i, j) = v;
    }
    std::string extra;
    if (rs >> extra)
      bad_line(lineno + i + 1, "row " + std::to_string(i + 1) + " has more than " +
                                   std::to_string(n) + " values");
  }

  try {
    enforce_unit_columns(a);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("matrix body: ") + e.what());
  }
  return SensingMatrix(std::move(a));
}

SensingMatrix SensingMatrix::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  return parse(in);
}

std::string SensingMatrix::to_text() const {
  std::string out;
  out.reserve(static_cast<size_t>(a_.size()) * 26 + 32);
  out += std::to_string(rows());
  out += ' ';
  out += std::to_string(cols());
  out += '\n';
  for (long i = 0; i < rows(); ++i) {
    for (long j = 0; j < cols(); ++j) {
      if (j) out += ' ';
      out += format_value(a_(i, j));
    }
    out += '\n';
  }
  return out;
}

void SensingMatrix::store(std::ostream& out) const { out << to_text(); }

void SensingMatrix::store_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  store(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string SensingMatrix::sha256_hex() const { return sha256_hex_of(to_text()); }

GramMatrix gram(const SensingMatrix& a) {
  Eigen::MatrixXd g = a.data().transpose() * a.data();
  // symmetrize exactly; the product is symmetric up to rounding
  g = ((g + g.transpose()) * 0.5).eval();
  return GramMatrix{std::move(g)};
}

double coherence(const SensingMatrix& a) {
  const long n = a.cols();
  if (n < 2) return 0.0;
  const GramMatrix g = gram(a);
  double best = 0.0;
  for (long j = 1; j < n; ++j)
    for (long i = 0; i < j; ++i) {
      const double denom = std::sqrt(g.g(i, i) * g.g(j, j));
      const double v = std::abs(g.g(i, j)) / denom;
      if (v > best) best = v;
    }
  return std::min(best, 1.0);
}

std::optional<long> max_recoverable_sparsity(double mu) {
  if (!(mu >= 0.0) || mu > 1.0)
    throw std::invalid_argument("max_recoverable_sparsity: mu must lie in [0, 1]");
  if (mu == 0.0) return std::nullopt;  // unbounded under this criterion
  long s = static_cast<long>(std::floor((1.0 / mu + 1.0) / 2.0));
  if (s < 0) s = 0;
  // fix up floating-point boundary cases against the strict criterion
  while (s >= 1 && !(mu < 1.0 / (2.0 * static_cast<double>(s) - 1.0))) --s;
  while (mu < 1.0 / (2.0 * static_cast<double>(s + 1) - 1.0)) ++s;
  return s;
}

}  // namespace incoherent
