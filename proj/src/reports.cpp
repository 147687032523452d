#include "incoherent/reports.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include "incoherent/version.hpp"

namespace incoherent {

using nlohmann::json;

RunManifest RunManifest::current(std::string command_line, std::optional<std::uint64_t> seed) {
  RunManifest m;
  m.command_line = std::move(command_line);
  m.version = kVersion;
  m.generator = kGeneratorId;
  m.seed = seed;
  m.timestamp_utc = now_utc_iso8601();
  return m;
}

std::string now_utc_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", utc.tm_year + 1900,
                utc.tm_mon + 1, utc.tm_mday, utc.tm_hour, utc.tm_min, utc.tm_sec);
  return buf;
}

json manifest_json(const RunManifest& manifest) {
  json j{
      {"command_line", manifest.command_line},
      {"version", manifest.version},
      {"generator", manifest.generator},
      {"timestamp_utc", manifest.timestamp_utc},
  };
  if (manifest.seed) j["seed"] = *manifest.seed;
  return j;
}

json wrap_report(const std::string& kind, const RunManifest& manifest, json payload) {
  return json{
      {"schema", "report-v1"},
      {"kind", kind},
      {"manifest", manifest_json(manifest)},
      {"report", std::move(payload)},
  };
}

json construction_json(const ConstructionReport& report) {
  const ComplexityCheck check = verify_complexity_claim(report);
  return json{
      {"success", report.success},
      {"failed_at_column", report.failed_at_column},
      {"attempts_per_column", report.attempts_per_column},
      {"candidates_drawn", report.candidates_drawn},
      {"inner_products_evaluated", report.inner_products_evaluated},
      {"achieved_coherence", report.achieved_coherence},
      {"elapsed_seconds", report.elapsed_seconds},
      {"params",
       {
           {"N", report.n},
           {"s", report.s},
           {"m", report.m},
           {"budget", report.budget},
           {"threshold", report.threshold},
           {"seed", report.seed},
       }},
      {"generator", report.generator},
      {"threshold_exceeds_recovery_condition", report.threshold_exceeds_recovery_condition},
      {"complexity",
       {
           {"candidates_drawn", check.candidates_drawn},
           {"candidates_bound", check.candidates_bound},
           {"candidates_within_bound", check.candidates_within_bound},
           {"inner_products_evaluated", check.inner_products_evaluated},
           {"inner_products_bound", check.inner_products_bound},
           {"inner_products_within_bound", check.inner_products_within_bound},
           {"stated_figure", check.stated_figure},
       }},
  };
}

json analysis_json(const SensingMatrix& a, std::optional<long> s) {
  const double mu = coherence(a);
  const double welch = welch_bound(a.rows(), a.cols());
  json j{
      {"m", a.rows()},
      {"N", a.cols()},
      {"coherence", mu},
      {"welch_bound", welch},
      {"welch_gap", mu - welch},
      {"matrix_sha256", a.sha256_hex()},
  };
  const std::optional<long> cap = max_recoverable_sparsity(mu);
  if (cap) {
    j["max_recoverable_sparsity"] = *cap;
  } else {
    j["max_recoverable_sparsity"] = "unbounded";
  }
  if (s) {
    j["s"] = *s;
    j["condition_for_s"] = mu < 1.0 / (2.0 * static_cast<double>(*s) - 1.0);
  }
  return j;
}

json bounds_json(const BoundsReport& r) {
  json j{
      {"s", r.s},
      {"N", r.n},
      {"m", r.m},
      {"welch_bound", r.welch},
      {"welch_vacuous", r.welch_vacuous},
      {"required_m", r.required_m},
      {"threshold", r.threshold},
      {"pair_reject_exact", r.pair_reject_exact},
      {"pair_reject_volume_form", r.pair_reject_volume_form},
      {"pair_reject_bound", r.pair_reject_bound},
      {"pair_reject_target", r.pair_reject_target},
      {"vol_surface_ratio", r.vol_surface_ratio},
      {"exact_le_volume_form", r.exact_le_volume_form},
      {"volume_form_le_bound", r.volume_form_le_bound},
      {"bound_le_target", r.bound_le_target},
      {"column_success_bound_worst", r.column_success_bound_worst},
      {"column_success_bound_worst_chain", r.column_success_bound_worst_chain},
  };
  if (r.width_ratio_defined) {
    j["width_ratio"] = r.width_ratio;
  } else {
    j["width_ratio"] = nullptr;
  }
  j["width_ratio_defined"] = r.width_ratio_defined;
  return j;
}

json experiment_json(const ExperimentSummary& s) {
  return json{
      {"matrix_sha256", s.matrix_sha256},
      {"s", s.s},
      {"trials", s.trials},
      {"seed", s.seed},
      {"success_rate", s.success_rate},
      {"worst_coeff_error", s.worst_coeff_error},
      {"condition_held", s.condition_held},
      {"successes", s.successes},
      {"coherence", s.coherence},
  };
}

json cap_json(const CapEstimate& e) {
  return json{
      {"m", e.m},          {"t", e.t},
      {"samples", e.samples}, {"seed", e.seed},
      {"estimate", e.estimate}, {"standard_error", e.standard_error},
  };
}

json ric_json(const RicEstimate& e) {
  return json{
      {"s", e.s},
      {"delta", e.delta},
      {"lambda_min", e.lambda_min},
      {"lambda_max", e.lambda_max},
      {"argmin_support", e.argmin_support},
      {"argmax_support", e.argmax_support},
  };
}

namespace {

// One CSV cell per JSON scalar, doubles at full round-trip precision.
std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string bounds_csv(const BoundsReport& r) {
  std::ostringstream out;
  out << "s,N,m,welch_bound,welch_vacuous,required_m,threshold,pair_reject_exact,"
         "pair_reject_volume_form,pair_reject_bound,pair_reject_target,vol_surface_ratio,"
         "exact_le_volume_form,volume_form_le_bound,bound_le_target,"
         "column_success_bound_worst,column_success_bound_worst_chain,width_ratio\n";
  out << r.s << ',' << r.n << ',' << r.m << ',' << cell(r.welch) << ',' << r.welch_vacuous << ','
      << r.required_m << ',' << cell(r.threshold) << ',' << cell(r.pair_reject_exact) << ','
      << cell(r.pair_reject_volume_form) << ',' << cell(r.pair_reject_bound) << ','
      << cell(r.pair_reject_target) << ',' << cell(r.vol_surface_ratio) << ','
      << r.exact_le_volume_form << ',' << r.volume_form_le_bound << ',' << r.bound_le_target << ','
      << cell(r.column_success_bound_worst) << ',' << cell(r.column_success_bound_worst_chain)
      << ',' << (r.width_ratio_defined ? cell(r.width_ratio) : "") << '\n';
  return out.str();
}

std::string experiment_csv(const ExperimentSummary& s) {
  std::ostringstream out;
  out << "matrix_sha256,s,trials,seed,success_rate,worst_coeff_error,condition_held,"
         "successes,coherence\n";
  out << s.matrix_sha256 << ',' << s.s << ',' << s.trials << ',' << s.seed << ','
      << cell(s.success_rate) << ',' << cell(s.worst_coeff_error) << ',' << s.condition_held
      << ',' << s.successes << ',' << cell(s.coherence) << '\n';
  return out.str();
}

}  // namespace incoherent
