/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radixlab/experiments.hpp"
#include "radixlab/report.hpp"
#include "radixlab/rng.hpp"

namespace {

using namespace radixlab;

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

// --systems entries are ';'-separated; a part without '=' may itself be a
// comma-separated list of canonical names, while inline specs keep their commas.
std::vector<SystemEntry> resolve_systems(const std::vector<std::string>& args) {
  std::vector<SystemEntry> entries;
  auto add = [&entries](const std::string& token) {
    if (token.empty()) return;
    NamedSystem named = parse_system(token);
    entries.push_back({named.name, ArithContext::for_system(named)});
  };
  for (const std::string& arg : args) {
    size_t pos = 0;
    while (pos <= arg.size()) {
      size_t semi = arg.find(';', pos);
      std::string part = arg.substr(pos, semi == std::string::npos ? semi : semi - pos);
      pos = semi == std::string::npos ? arg.size() + 1 : semi + 1;
      if (part.empty()) continue;
      if (part.find('=') != std::string::npos) {
        add(part);
      } else {
        size_t p2 = 0;
        while (p2 <= part.size()) {
          size_t comma = part.find(',', p2);
          std::string name = part.substr(p2, comma == std::string::npos ? comma : comma - p2);
          p2 = comma == std::string::npos ? part.size() + 1 : comma + 1;
          add(name);
        }
      }
    }
  }
  return entries;
}

void emit(const std::string& payload, const std::string& out_path, RunManifest manifest) {
  manifest.finished_at = utc_timestamp();
  if (out_path.empty()) {
    std::cout << payload;
    std::cerr << render_manifest(manifest);
    return;
  }
  {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file " + out_path);
    file << payload;
  }
  std::ofstream mf(out_path + ".manifest.json", std::ios::binary);
  if (!mf) throw std::runtime_error("cannot open manifest file beside " + out_path);
  mf << render_manifest(manifest);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floating-point number-system precision laboratory"};
  app.require_subcommand(1);

  std::string format_name = "md";
  std::string out_path;

  auto* cmd_theory = app.add_subcommand("theory", "Analytic worst-case and rms penalty table");
  cmd_theory->add_option("--format", format_name, "md, csv or json");
  cmd_theory->add_option("--out", out_path, "write the table to a file (manifest alongside)");

  auto* cmd_run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  std::string kind_name;
  int n = 1;
  std::int64_t m = 10000;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool positive = false;
  std::vector<std::string> system_args;
  cmd_run->add_option("kind", kind_name, "sums, linsys, eig or products")->required();
  cmd_run->add_option("--n", n, "problem size (summands, matrix order, chain length)");
  cmd_run->add_option("--m", m, "trial count");
  cmd_run->add_option("--systems", system_args,
                      "';'-separated systems: canonical names (comma lists allowed) or inline "
                      "specs like k=4,u=24,p=1,emin=-64,emax=64,mode=rstar");
  cmd_run->add_option("--seed", seed, "master seed (decimal 64-bit)");
  cmd_run->add_option("--format", format_name, "md, csv or json");
  cmd_run->add_option("--out", out_path, "write the result to a file (manifest alongside)");
  cmd_run->add_option("--jobs", jobs, "worker threads; any value reproduces the same bytes");
  cmd_run->add_flag("--positive", positive, "sums only: draw from [0, Z] instead of [-Z, Z]");

  auto* cmd_density = app.add_subcommand("density", "Representation-error density vs theory");
  std::string density_system = "S2";
  std::int64_t samples = 1000000;
  int bins = 64;
  cmd_density->add_option("--system", density_system, "a round-to-nearest system name or inline spec");
  cmd_density->add_option("--samples", samples, "number of log-uniform draws");
  cmd_density->add_option("--bins", bins, "histogram bins over the density support");
  cmd_density->add_option("--seed", seed, "master seed");
  cmd_density->add_option("--format", format_name, "md, csv or json");
  cmd_density->add_option("--out", out_path, "write the histogram to a file (manifest alongside)");

  CLI11_PARSE(app, argc, argv);

  RunManifest manifest;
  manifest.command_line = join_args(argc, argv);
  manifest.generator = kGeneratorName;
  manifest.started_at = utc_timestamp();

  try {
    OutputFormat format = output_format_from_string(format_name);

    if (cmd_theory->parsed()) {
      manifest.config_summary = "theory";
      emit(render_table1(format), out_path, manifest);
      return 0;
    }

    if (cmd_run->parsed()) {
      ExperimentConfig config;
      config.kind = experiment_kind_from_string(kind_name);
      config.n = n;
      config.m = m;
      config.master_seed = seed;
      config.positive_only = positive;
      config.jobs = jobs;
      config.systems = system_args.empty() ? standard_system_entries()
                                           : resolve_systems(system_args);

      ExperimentResult result = run_experiment(config);

      manifest.master_seed = seed;
      manifest.redraws = result.redraws;
      manifest.config_summary = "run " + to_string(config.kind) + " n=" + std::to_string(n) +
                                " m=" + std::to_string(m) + " systems=" +
                                std::to_string(config.systems.size()) +
                                (positive ? " positive" : "");
      emit(render_result(result, format), out_path, manifest);
      if (result.redraw_rate() > 0.01) {
        std::cerr << "warning: redraw rate " << result.redraw_rate() << " exceeds 1%\n";
        return 2;
      }
      return 0;
    }

    if (cmd_density->parsed()) {
      NamedSystem named = parse_system(density_system);
      if (named.is_log())
        throw InvalidSpec("density applies to floating-point systems, not logarithmic ones");
      DensityReport report =
          run_density(named.name, std::get<SystemSpec>(named.spec), samples, bins, seed);
      manifest.master_seed = seed;
      manifest.config_summary = "density system=" + named.name +
                                " samples=" + std::to_string(samples) +
                                " bins=" + std::to_string(bins);
      emit(render_density(report, format), out_path, manifest);
      return 0;
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
