/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "radixlab/numsys.hpp"
#include "radixlab/simarith.hpp"

namespace radixlab {

enum class ExperimentKind { Sums, LinSys, Eig, Products };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(std::string_view name);

struct SystemEntry {
  std::string name;
  ArithContext ctx;
};

/// Test hooks: substitute a fixed structure for the random draw so representation
/// error can be isolated from computation error.
enum class TrialHook { None, IdentityMatrix, DiagonalMatrix };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Sums;
  int n = 1;
  std::int64_t m = 1000;
  std::vector<SystemEntry> systems;  // first entry is the gamma reference
  std::uint64_t master_seed = 0;
  bool positive_only = false;  // sums variant
  int jobs = 1;
  TrialHook hook = TrialHook::None;
};

/// Builds the S0..S5 entry list (S0 first) with contexts attached.
std::vector<SystemEntry> standard_system_entries();

struct SystemStats {
  std::string name;
  std::string spec_text;
  double beta = 0.0;      // rms of alpha over the trials
  double se_beta = 0.0;   // delta-method standard error of beta
  double gamma = 0.0;     // beta / beta of the reference (first) system
  double se_gamma = 0.0;  // uncorrelated propagation; conservative
  double sum_sq = 0.0;    // sum of alpha^2
  double sum_quad = 0.0;  // sum of alpha^4
};

struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::Sums;
  int n = 0;
  std::int64_t m = 0;
  std::uint64_t master_seed = 0;
  bool positive_only = false;
  int jobs = 1;
  std::vector<SystemStats> systems;
  std::int64_t redraws = 0;

  double redraw_rate() const {
    return m > 0 ? static_cast<double>(redraws) / static_cast<double>(m) : 0.0;
  }
};

/// Runs the configured Monte Carlo experiment. Trials are independent and own
/// deterministic substreams, so the result is bit-identical for any job count.
/// Singular systems and QL convergence failures redraw the trial (counted);
/// overflow, underflow and violated product bounds abort the run.
ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_sums(const ExperimentConfig& config);
ExperimentResult run_linsys(const ExperimentConfig& config);
ExperimentResult run_eig(const ExperimentConfig& config);
ExperimentResult run_products(const ExperimentConfig& config);

/// sqrt of the mean square.
double rms(std::span<const double> values);

/// Standard error of rms(values) by the delta method applied to the mean of
/// squares; zero for fewer than two values or an identically zero rms.
double standard_error_of_rms(std::span<const double> values);

/// gamma_j = beta_j / beta_0 for a finished result (reference first); the
/// reference entry is exactly 1.
std::vector<double> gamma_ratios(const ExperimentResult& result);

/// QL parameters used for every simulated system, and the tighter deflation
/// constant used when the same pipeline produces the reference ("exact") answer.
inline constexpr long double kSimMacheps = 1e-8L;
inline constexpr long double kSimTol = 1e-60L;
inline constexpr long double kRefMacheps = 0x1p-60L;

/// Histogram of the relative representation error of log-uniform draws on
/// [1/beta, 1) rounded into a system, binned against the closed-form density.
struct DensityReport {
  std::string system_name;
  SystemSpec spec;
  std::int64_t samples = 0;
  int bins = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> bin_center;
  std::vector<double> empirical;    // per-bin empirical density
  std::vector<double> theoretical;  // bin-averaged density from theory
  std::vector<double> bin_se;       // per-bin Monte Carlo standard error (density units)
  double mean_delta = 0.0;
  double rms_delta = 0.0;
  double se_mean_delta = 0.0;
};

/// Samples the representation-error density of a round-to-nearest system and
/// bins it against the closed-form density over its full support.
DensityReport run_density(const std::string& name, const SystemSpec& spec, std::int64_t samples,
                          int bins, std::uint64_t master_seed);

}  // namespace radixlab
