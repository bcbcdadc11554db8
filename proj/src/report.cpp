/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include "radixlab/report.hpp"

#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "radixlab/rng.hpp"
#include "radixlab/theory.hpp"

namespace radixlab {
namespace {

std::string fmt_sig(double value, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string fmt_full(double value) { return fmt_sig(value, 17); }

}  // namespace

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "md" || name == "markdown") return OutputFormat::Markdown;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InvalidSpec("unknown output format \"" + std::string(name) + "\"");
}

std::string render_table1(OutputFormat format) {
  auto rows = theory::table1();
  std::string out;
  switch (format) {
    case OutputFormat::Markdown:
      out = "k | p | beta | f1 | f2\n--- | --- | --- | --- | ---\n";
      for (auto& r : rows)
        out += std::to_string(r.k) + " | " + std::to_string(r.p) + " | " +
               std::to_string(r.beta) + " | " + fmt_sig(r.f1, 3) + " | " + fmt_sig(r.f2, 3) + "\n";
      return out;
    case OutputFormat::Csv:
      out = "k,p,beta,f1,f2\n";
      for (auto& r : rows)
        out += std::to_string(r.k) + "," + std::to_string(r.p) + "," + std::to_string(r.beta) +
               "," + fmt_sig(r.f1, 3) + "," + fmt_sig(r.f2, 3) + "\n";
      return out;
    case OutputFormat::Json: {
      nlohmann::json doc;
      doc["rows"] = nlohmann::json::array();
      for (auto& r : rows)
        doc["rows"].push_back({{"k", r.k}, {"p", r.p}, {"beta", r.beta}, {"f1", r.f1}, {"f2", r.f2}});
      return doc.dump(2) + "\n";
    }
  }
  return out;
}

std::string render_result(const ExperimentResult& result, OutputFormat format) {
  std::string out;
  switch (format) {
    case OutputFormat::Markdown: {
      out = "kind=" + to_string(result.kind) + " n=" + std::to_string(result.n) +
            " m=" + std::to_string(result.m) + " seed=" + std::to_string(result.master_seed);
      if (result.positive_only) out += " positive";
      out += " redraws=" + std::to_string(result.redraws) + "\n\n";
      out += "system | beta | gamma | se(gamma)\n--- | --- | --- | ---\n";
      for (auto& s : result.systems)
        out += s.name + " | " + fmt_sig(s.beta, 4) + " | " + fmt_sig(s.gamma, 4) + " | " +
               fmt_sig(s.se_gamma, 2) + "\n";
      return out;
    }
    case OutputFormat::Csv:
      out = "system,spec,beta,se_beta,gamma,se_gamma\n";
      for (auto& s : result.systems)
        out += s.name + ",\"" + s.spec_text + "\"," + fmt_full(s.beta) + "," +
               fmt_full(s.se_beta) + "," + fmt_full(s.gamma) + "," + fmt_full(s.se_gamma) + "\n";
      return out;
    case OutputFormat::Json: {
      nlohmann::json doc;
      doc["experiment"] = {{"kind", to_string(result.kind)},
                           {"n", result.n},
                           {"m", result.m},
                           {"seed", result.master_seed},
                           {"positive_only", result.positive_only},
                           {"redraws", result.redraws}};
      doc["systems"] = nlohmann::json::array();
      for (auto& s : result.systems)
        doc["systems"].push_back({{"name", s.name},
                                  {"spec", s.spec_text},
                                  {"beta", s.beta},
                                  {"se_beta", s.se_beta},
                                  {"gamma", s.gamma},
                                  {"se_gamma", s.se_gamma}});
      return doc.dump(2) + "\n";
    }
  }
  return out;
}

std::string render_density(const DensityReport& report, OutputFormat format) {
  std::string out;
  switch (format) {
    case OutputFormat::Markdown: {
      out = "system=" + report.system_name + " samples=" + std::to_string(report.samples) +
            " bins=" + std::to_string(report.bins) + " seed=" + std::to_string(report.master_seed) +
            "\nmean(delta)=" + fmt_sig(report.mean_delta, 4) +
            " rms(delta)=" + fmt_sig(report.rms_delta, 4) + "\n\n";
      out += "bin_center | empirical | theoretical\n--- | --- | ---\n";
      for (size_t i = 0; i < report.bin_center.size(); ++i)
        out += fmt_sig(report.bin_center[i], 4) + " | " + fmt_sig(report.empirical[i], 4) +
               " | " + fmt_sig(report.theoretical[i], 4) + "\n";
      return out;
    }
    case OutputFormat::Csv:
      out = "bin_center,empirical_density,theoretical_density,bin_se\n";
      for (size_t i = 0; i < report.bin_center.size(); ++i)
        out += fmt_full(report.bin_center[i]) + "," + fmt_full(report.empirical[i]) + "," +
               fmt_full(report.theoretical[i]) + "," + fmt_full(report.bin_se[i]) + "\n";
      return out;
    case OutputFormat::Json: {
      nlohmann::json doc;
      doc["density"] = {{"system", report.system_name},
                        {"spec", to_string(report.spec)},
                        {"samples", report.samples},
                        {"bins", report.bins},
                        {"seed", report.master_seed},
                        {"mean_delta", report.mean_delta},
                        {"rms_delta", report.rms_delta},
                        {"se_mean_delta", report.se_mean_delta}};
      doc["bin_center"] = report.bin_center;
      doc["empirical"] = report.empirical;
      doc["theoretical"] = report.theoretical;
      doc["bin_se"] = report.bin_se;
      return doc.dump(2) + "\n";
    }
  }
  return out;
}

std::string render_manifest(const RunManifest& manifest) {
  nlohmann::json doc = {{"command_line", manifest.command_line},
                        {"tool_version", manifest.tool_version},
                        {"generator", manifest.generator.empty() ? kGeneratorName : manifest.generator},
                        {"master_seed", manifest.master_seed},
                        {"config", manifest.config_summary},
                        {"redraws", manifest.redraws},
                        {"started_at", manifest.started_at},
                        {"finished_at", manifest.finished_at}};
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace radixlab
