#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "incoherent/bounds.hpp"
#include "incoherent/construct.hpp"
#include "incoherent/matrix.hpp"
#include "incoherent/recovery.hpp"

namespace incoherent {

/// Provenance block embedded verbatim in every JSON report. Two runs with
/// the same manifest minus the timestamp (and the same inputs) produce the
/// same outputs.
struct RunManifest {
  std::string command_line;
  std::string version;    // toolkit version
  std::string generator;  // sampling pipeline id
  std::optional<std::uint64_t> seed;  // absent for unseeded commands
  std::string timestamp_utc;          // UTC ISO-8601

  /// Manifest for the current process: version/generator filled in,
  /// timestamp taken from the wall clock.
  static RunManifest current(std::string command_line, std::optional<std::uint64_t> seed);
};

/// Wall clock in UTC ISO-8601 (e.g. "2024-05-01T12:34:56Z").
std::string now_utc_iso8601();

nlohmann::json manifest_json(const RunManifest& manifest);

/// Top-level envelope shared by every command:
///   {"schema": "report-v1", "kind": <kind>, "manifest": {...}, "report": {...}}
nlohmann::json wrap_report(const std::string& kind, const RunManifest& manifest,
                           nlohmann::json payload);

nlohmann::json construction_json(const ConstructionReport& report);

/// Analysis payload for one matrix; condition_for_s appears only when s is
/// given. max_recoverable_sparsity serializes as the string "unbounded" for
/// orthonormal columns (coherence 0).
nlohmann::json analysis_json(const SensingMatrix& a, std::optional<long> s);

nlohmann::json bounds_json(const BoundsReport& report);
nlohmann::json experiment_json(const ExperimentSummary& summary);
nlohmann::json cap_json(const CapEstimate& estimate);
nlohmann::json ric_json(const RicEstimate& estimate);

/// Flat CSV (header + one row) mirroring the corresponding JSON payloads,
/// for plotting pipelines.
std::string bounds_csv(const BoundsReport& report);
std::string experiment_csv(const ExperimentSummary& summary);

}  // namespace incoherent
