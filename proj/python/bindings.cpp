// Python face of the toolkit. Reports cross the boundary as plain dicts
// built from the same JSON builders the CLI uses, so the Python surface and
// the file formats can never drift apart.

#include <optional>
#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "incoherent/bounds.hpp"
#include "incoherent/construct.hpp"
#include "incoherent/matrix.hpp"
#include "incoherent/recovery.hpp"
#include "incoherent/reports.hpp"
#include "incoherent/version.hpp"

namespace py = pybind11;

namespace {

using incoherent::SensingMatrix;

SensingMatrix as_matrix(const Eigen::MatrixXd& a) { return SensingMatrix::from_columns(a); }

py::object to_py(const nlohmann::json& j) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::object: {
      py::dict d;
      for (const auto& [key, value] : j.items()) d[py::str(key)] = to_py(value);
      return d;
    }
    case value_t::array: {
      py::list l;
      for (const auto& value : j) l.append(to_py(value));
      return l;
    }
    case value_t::string:
      return py::str(j.get<std::string>());
    case value_t::boolean:
      return py::bool_(j.get<bool>());
    case value_t::number_integer:
      return py::int_(j.get<long long>());
    case value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case value_t::number_float:
      return py::float_(j.get<double>());
    default:
      return py::none();
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Low-coherence sensing matrix construction, bounds, and recovery validation";
  m.attr("__version__") = incoherent::kVersion;
  m.attr("GENERATOR_ID") = incoherent::kGeneratorId;

  // --- closed-form bounds ---------------------------------------------------
  m.def("welch_bound", &incoherent::welch_bound, py::arg("m"), py::arg("n"),
        "Welch coherence lower bound for an m x N unit-column matrix");
  m.def("required_m", &incoherent::required_m, py::arg("s"), py::arg("n"),
        "Measurement count ceil(8 s^2 ln(2 s N / pi)) + 2");
  m.def("pair_reject_bound", &incoherent::pair_reject_bound, py::arg("s"), py::arg("m"),
        "Closed-form upper bound on the two-cap measure at threshold 1/(2s)");
  m.def("cap_measure_exact", &incoherent::cap_measure_exact, py::arg("m"), py::arg("t"),
        "Exact probability that |<y, x>| >= t for uniform unit y in dimension m");
  m.def("sphere_volume_surface_ratio", &incoherent::sphere_volume_surface_ratio, py::arg("m"));
  m.def("width_ratio", &incoherent::width_ratio, py::arg("m"), py::arg("n"), py::arg("mu"),
        "Implied constant of the width bound m >= C ln(N) mu^-2 / ln(1/mu)");
  m.def(
      "bounds_report",
      [](long s, long n, std::optional<long> m_rows) {
        return to_py(incoherent::bounds_json(incoherent::make_bounds_report(s, n, m_rows)));
      },
      py::arg("s"), py::arg("n"), py::arg("m") = std::nullopt,
      "Full closed-form report including the pair-rejection inequality chain");

  // --- matrix analysis --------------------------------------------------------
  m.def(
      "coherence", [](const Eigen::MatrixXd& a) { return incoherent::coherence(as_matrix(a)); },
      py::arg("a"), "Mutual incoherence (largest absolute normalized column inner product)");
  m.def(
      "gram", [](const Eigen::MatrixXd& a) { return incoherent::gram(as_matrix(a)).g; },
      py::arg("a"));
  m.def(
      "max_recoverable_sparsity",
      [](double mu) -> py::object {
        const std::optional<long> s = incoherent::max_recoverable_sparsity(mu);
        if (s) return py::int_(*s);
        return py::none();
      },
      py::arg("mu"), "Largest s with mu < 1/(2s - 1); None when mu = 0 (no limit)");
  m.def(
      "analyze",
      [](const Eigen::MatrixXd& a, std::optional<long> s) {
        return to_py(incoherent::analysis_json(as_matrix(a), s));
      },
      py::arg("a"), py::arg("s") = std::nullopt,
      "Coherence / Welch / recoverable-sparsity report for one matrix");

  // --- matrix text format -----------------------------------------------------
  m.def(
      "parse_matrix",
      [](const std::string& text) {
        std::istringstream in(text);
        return SensingMatrix::parse(in).data();
      },
      py::arg("text"), "Parse the 'm N' header + rows text format");
  m.def(
      "matrix_to_text", [](const Eigen::MatrixXd& a) { return as_matrix(a).to_text(); },
      py::arg("a"), "Canonical text serialization (17 significant digits)");
  m.def(
      "matrix_sha256", [](const Eigen::MatrixXd& a) { return as_matrix(a).sha256_hex(); },
      py::arg("a"), "SHA-256 of the canonical text serialization");

  // --- construction -------------------------------------------------------------
  m.def(
      "construct",
      [](long n, long s, long m_rows, std::uint64_t seed, long budget, double threshold) {
        incoherent::ConstructionParams params;
        params.n = n;
        params.s = s;
        params.m = m_rows;
        params.seed = seed;
        params.budget = budget;
        params.threshold = threshold;
        const incoherent::ConstructionResult result = incoherent::construct(params);
        py::object matrix = py::none();
        if (result.matrix) matrix = py::cast(result.matrix->data());
        return py::make_tuple(matrix, to_py(incoherent::construction_json(result.report)));
      },
      py::arg("n"), py::arg("s"), py::arg("m") = 0, py::arg("seed") = 0,
      py::arg("budget") = 10, py::arg("threshold") = 0.0,
      "Seeded rejection-sampling construction; returns (matrix or None, report dict)");

  // --- recovery validation --------------------------------------------------------
  m.def(
      "omp",
      [](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, long s) {
        const incoherent::RecoveryResult r = incoherent::omp(as_matrix(a), b, s);
        py::dict d;
        d["support"] = r.support;  // 1-based
        d["coefficients"] = r.coefficients;
        d["residual_norm"] = r.residual_norm;
        d["degenerate"] = r.degenerate;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("s"),
      "Orthogonal matching pursuit; support indices are 1-based");
  m.def(
      "brute_force_l0",
      [](const Eigen::MatrixXd& a, const Eigen::VectorXd& b, long s_max) -> py::object {
        const std::optional<incoherent::SparseSignal> x =
            incoherent::brute_force_l0(as_matrix(a), b, s_max);
        if (!x) return py::none();
        py::dict d;
        d["support"] = x->support;
        d["values"] = x->values;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("s_max"),
      "Exhaustive minimum-support solve (N <= 20, s_max <= 3); None if infeasible");
  m.def(
      "ric_brute_force",
      [](const Eigen::MatrixXd& a, long s) {
        return to_py(incoherent::ric_json(incoherent::ric_brute_force(as_matrix(a), s)));
      },
      py::arg("a"), py::arg("s"), "Exact restricted isometry constant by enumeration");
  m.def(
      "recovery_experiment",
      [](const Eigen::MatrixXd& a, long s, long trials, std::uint64_t seed) {
        return to_py(
            incoherent::experiment_json(incoherent::recovery_experiment(as_matrix(a), s, trials, seed)));
      },
      py::arg("a"), py::arg("s"), py::arg("trials"), py::arg("seed"),
      "Random s-sparse recovery trials; deterministic given the seed");
  m.def(
      "monte_carlo_cap",
      [](long m_dim, double t, long samples, std::uint64_t seed) {
        return to_py(incoherent::cap_json(incoherent::monte_carlo_cap(m_dim, t, samples, seed)));
      },
      py::arg("m"), py::arg("t"), py::arg("samples"), py::arg("seed"),
      "Monte Carlo two-cap measure estimate with binomial standard error");
}
