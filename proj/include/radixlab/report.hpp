/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "radixlab/experiments.hpp"

namespace radixlab {

inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputFormat { Markdown, Csv, Json };

OutputFormat output_format_from_string(std::string_view name);

/// The analytic worst-case/rms penalty table, three significant figures in the
/// human formats, full precision in JSON.
std::string render_table1(OutputFormat format);

/// Result table: one row per system with beta, gamma and standard errors. The
/// rendering is a pure function of the result, so identical configurations give
/// byte-identical output.
std::string render_result(const ExperimentResult& result, OutputFormat format);

std::string render_density(const DensityReport& report, OutputFormat format);

/// Provenance sidecar for a run. Timestamps live only here, never in the result
/// payload, so payload bytes stay reproducible.
struct RunManifest {
  std::string command_line;
  std::string tool_version = kToolVersion;
  std::string generator;
  std::uint64_t master_seed = 0;
  std::string config_summary;
  std::int64_t redraws = 0;
  std::string started_at;
  std::string finished_at;
};

std::string render_manifest(const RunManifest& manifest);

/// Current UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

}  // namespace radixlab
