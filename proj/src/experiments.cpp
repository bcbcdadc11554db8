/**************************************************************************************************
 * Apache License, Version 2.0
 * Copyright (c) 2026 the radixlab authors
 **************************************************************************************************/

#include "radixlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "radixlab/linalg.hpp"
#include "radixlab/rng.hpp"
#include "radixlab/theory.hpp"

namespace radixlab {
namespace {

// A trial hit a zero denominator or similar measure-zero degeneracy; redraw it.
struct DegenerateTrial : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trials are processed in fixed-size blocks so that any job count reduces the
// per-block partial sums in the same order as a sequential run.
constexpr std::int64_t kBlockTrials = 1024;
constexpr int kMaxAttemptsPerTrial = 256;

struct Accum {
  std::vector<double> sum_sq;
  std::vector<double> sum_quad;
  std::int64_t redraws = 0;
};

void trial_sums(const ExperimentConfig& cfg, RngStream& stream, std::vector<double>& alpha) {
  const int n = cfg.n;
  std::vector<double> x(n);
  double Z = stream.scale_factor();
  for (int i = 0; i < n; ++i)
    x[i] = cfg.positive_only ? stream.uniform01() * Z : stream.uniform_sym(Z);

  Real true_sum = 0.0L, denom = 0.0L;
  for (int i = 0; i < n; ++i) {
    true_sum = ref_add(true_sum, x[i]);
    denom = ref_add(denom, ref_abs(x[i]));
  }
  if (denom == 0.0L) throw DegenerateTrial("all summands zero");

  for (size_t j = 0; j < cfg.systems.size(); ++j) {
    const ArithContext& ctx = cfg.systems[j].ctx;
    Real s = ctx.round(x[0]);
    for (int i = 1; i < n; ++i) s = sim_add(ctx, s, ctx.round(x[i]));
    alpha[j] = static_cast<double>(ref_sub(true_sum, s) / denom);
  }
}

void trial_linsys(const ExperimentConfig& cfg, RngStream& stream, std::vector<double>& alpha) {
  const int n = cfg.n;
  const ArithContext ref = ArithContext::reference();

  double Z1 = stream.scale_factor();
  double Z2 = stream.scale_factor();
  Mat A(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) A.at(r, c) = stream.uniform_sym(Z1);
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = stream.uniform_sym(Z2);

  if (cfg.hook == TrialHook::IdentityMatrix)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A.at(r, c) = (r == c) ? 1.0L : 0.0L;

  Vec b(n, 0.0L);
  for (int r = 0; r < n; ++r) {
    Real acc = 0.0L;
    for (int c = 0; c < n; ++c) acc = ref_add(acc, ref_mul(A.at(r, c), x[c]));
    b[r] = acc;
  }
  Real norm_a = frobenius_norm(ref, A);
  Real norm_x = two_norm(ref, x);
  if (norm_a == 0.0L || norm_x == 0.0L) throw DegenerateTrial("zero matrix or solution");

  for (size_t j = 0; j < cfg.systems.size(); ++j) {
    const ArithContext& ctx = cfg.systems[j].ctx;
    Mat Aj(n);
    Vec bj(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) Aj.at(r, c) = ctx.round(A.at(r, c));
    for (int r = 0; r < n; ++r) bj[r] = ctx.round(b[r]);

    Vec y = gauss_solve_complete_pivot(ctx, Aj, bj);

    Vec residual(n, 0.0L);
    for (int r = 0; r < n; ++r) {
      Real acc = 0.0L;
      for (int c = 0; c < n; ++c) acc = ref_add(acc, ref_mul(A.at(r, c), y[c]));
      residual[r] = ref_sub(acc, b[r]);
    }
    alpha[j] = static_cast<double>(two_norm(ref, residual) / ref_mul(norm_a, norm_x));
  }
}

void trial_eig(const ExperimentConfig& cfg, RngStream& stream, std::vector<double>& alpha) {
  const int n = cfg.n;
  const ArithContext ref = ArithContext::reference();

  double Z = stream.scale_factor();
  Mat A(n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      double v = stream.uniform_sym(Z);
      A.at(p, q) = v;
      A.at(q, p) = v;
    }
  if (cfg.hook == TrialHook::DiagonalMatrix)
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (p != q) A.at(p, q) = 0.0L;

  Real norm_a = frobenius_norm(ref, A);
  if (norm_a == 0.0L) throw DegenerateTrial("zero matrix");

  Vec exact = symmetric_eigenvalues(ref, A, kRefMacheps, kSimTol);

  for (size_t j = 0; j < cfg.systems.size(); ++j) {
    const ArithContext& ctx = cfg.systems[j].ctx;
    Mat Aj(n);
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) {
        Real v = ctx.round(A.at(p, q));
        Aj.at(p, q) = v;
        Aj.at(q, p) = v;
      }
    Vec approx = symmetric_eigenvalues(ctx, Aj, kSimMacheps, kSimTol);

    Real acc = 0.0L;
    for (int i = 0; i < n; ++i) {
      Real diff = ref_sub(exact[i], approx[i]);
      acc = ref_add(acc, ref_mul(diff, diff));
    }
    alpha[j] = static_cast<double>(ref_sqrt(acc) / norm_a);
  }
}

void trial_products(const ExperimentConfig& cfg, RngStream& stream, std::vector<double>& alpha) {
  const int n = cfg.n;  // number of multiplications; n + 1 factors
  std::vector<double> x(n + 1);
  for (int i = 0; i <= n; ++i) {
    // Log-uniform magnitude across four binades, random sign.
    double t = 4.0 * stream.uniform01() - 2.0;
    double sign = stream.uniform01() < 0.5 ? -1.0 : 1.0;
    x[i] = sign * std::exp2(t);
  }

  for (size_t j = 0; j < cfg.systems.size(); ++j) {
    const ArithContext& ctx = cfg.systems[j].ctx;
    std::vector<Real> in(n + 1);
    for (int i = 0; i <= n; ++i) in[i] = ctx.round(x[i]);

    Real chain = in[0];
    for (int i = 1; i <= n; ++i) chain = sim_mul(ctx, chain, in[i]);

    // True product of the rounded inputs. Log-system inputs multiply exactly, so
    // their product is formed in code space and maps back through the same
    // value function as the chain; matching codes make the error exactly zero.
    Real truth;
    if (ctx.kind() == ArithContext::Kind::Logarithmic) {
      const LogSystemSpec& ls = ctx.log_spec();
      std::int64_t code_sum = 0;
      int sign = 1;
      for (int i = 0; i <= n; ++i) {
        LogValue lv = fl_log(ls, in[i]);
        if (lv.is_zero()) throw DegenerateTrial("zero factor");
        if (lv.lambda < 0) sign = -sign;
        code_sum += lv.lambda < 0 ? -lv.lambda : lv.lambda;
      }
      std::int64_t code = code_sum - static_cast<std::int64_t>(n) * ls.b;
      if (code < 1 || code > ls.max_code())
        throw OverflowError("products: log-system product out of range");
      truth = value_of(ls, LogValue{sign < 0 ? -code : code});
    } else {
      truth = in[0];
      for (int i = 1; i <= n; ++i) truth = ref_mul(truth, in[i]);
    }
    if (truth == 0.0L) throw DegenerateTrial("zero product");

    Real delta = ref_sub(truth, chain) / truth;
    double eps = static_cast<double>(ctx.worst_relative_error());
    double bound = theory::product_error_bound(n, eps) + static_cast<double>(n) * n * eps * eps;
    if (ref_abs(delta) > static_cast<Real>(bound))
      throw BoundViolated("products: |delta| above n*eps + n^2*eps^2 in system " +
                          cfg.systems[j].name);
    alpha[j] = static_cast<double>(delta);
  }
}

void run_trial(const ExperimentConfig& cfg, RngStream& stream, std::vector<double>& alpha) {
  switch (cfg.kind) {
    case ExperimentKind::Sums: trial_sums(cfg, stream, alpha); return;
    case ExperimentKind::LinSys: trial_linsys(cfg, stream, alpha); return;
    case ExperimentKind::Eig: trial_eig(cfg, stream, alpha); return;
    case ExperimentKind::Products: trial_products(cfg, stream, alpha); return;
  }
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.m < 1) throw InvalidSpec("experiment needs m >= 1 trials");
  if (cfg.n < 1) throw InvalidSpec("experiment needs n >= 1");
  if (cfg.kind == ExperimentKind::Eig && cfg.n < 2)
    throw InvalidSpec("eigenvalue experiment needs n >= 2");
  if (cfg.systems.empty()) throw InvalidSpec("experiment needs at least one system");
  if (cfg.jobs < 1) throw InvalidSpec("jobs must be >= 1");
}

Accum process_block(const ExperimentConfig& cfg, std::int64_t first, std::int64_t last) {
  const std::string tag = to_string(cfg.kind);
  const size_t n_systems = cfg.systems.size();
  Accum acc;
  acc.sum_sq.assign(n_systems, 0.0);
  acc.sum_quad.assign(n_systems, 0.0);
  std::vector<double> alpha(n_systems, 0.0);

  for (std::int64_t t = first; t < last; ++t) {
    bool done = false;
    for (int attempt = 0; attempt < kMaxAttemptsPerTrial; ++attempt) {
      // Redraws get fresh deterministic streams within the trial's index window.
      RngStream stream = substream(cfg.master_seed, tag,
                                   static_cast<std::uint64_t>(t) * kMaxAttemptsPerTrial +
                                       static_cast<std::uint64_t>(attempt));
      try {
        run_trial(cfg, stream, alpha);
        done = true;
        break;
      } catch (const SingularMatrix&) {
        ++acc.redraws;
      } catch (const NoConvergence&) {
        ++acc.redraws;
      } catch (const DegenerateTrial&) {
        ++acc.redraws;
      }
    }
    if (!done)
      throw std::runtime_error("trial " + std::to_string(t) + " redrew " +
                               std::to_string(kMaxAttemptsPerTrial) +
                               " times; the configuration is degenerate");
    for (size_t j = 0; j < n_systems; ++j) {
      double sq = alpha[j] * alpha[j];
      acc.sum_sq[j] += sq;
      acc.sum_quad[j] += sq * sq;
    }
  }
  return acc;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Sums: return "sums";
    case ExperimentKind::LinSys: return "linsys";
    case ExperimentKind::Eig: return "eig";
    case ExperimentKind::Products: return "products";
  }
  return "sums";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  if (name == "sums") return ExperimentKind::Sums;
  if (name == "linsys") return ExperimentKind::LinSys;
  if (name == "eig") return ExperimentKind::Eig;
  if (name == "products") return ExperimentKind::Products;
  throw InvalidSpec("unknown experiment kind \"" + std::string(name) + "\"");
}

std::vector<SystemEntry> standard_system_entries() {
  std::vector<SystemEntry> entries;
  for (auto& named : standard_systems())
    entries.push_back({named.name, ArithContext::for_system(named)});
  return entries;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const size_t n_systems = cfg.systems.size();
  const std::int64_t n_blocks = (cfg.m + kBlockTrials - 1) / kBlockTrials;

  std::vector<Accum> blocks(static_cast<size_t>(n_blocks));
  std::atomic<std::int64_t> next_block{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      std::int64_t blk = next_block.fetch_add(1);
      if (blk >= n_blocks) return;
      std::int64_t first = blk * kBlockTrials;
      std::int64_t last = std::min(cfg.m, first + kBlockTrials);
      try {
        blocks[static_cast<size_t>(blk)] = process_block(cfg, first, last);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int jobs = static_cast<int>(std::min<std::int64_t>(static_cast<std::int64_t>(cfg.jobs), n_blocks));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Fixed block-order reduction: identical bits for any job count.
  ExperimentResult result;
  result.kind = cfg.kind;
  result.n = cfg.n;
  result.m = cfg.m;
  result.master_seed = cfg.master_seed;
  result.positive_only = cfg.positive_only;
  result.jobs = cfg.jobs;
  result.systems.resize(n_systems);
  for (size_t j = 0; j < n_systems; ++j) {
    SystemStats& stats = result.systems[j];
    stats.name = cfg.systems[j].name;
    stats.spec_text = cfg.systems[j].ctx.describe();
  }
  for (auto& blk : blocks) {
    result.redraws += blk.redraws;
    for (size_t j = 0; j < n_systems; ++j) {
      result.systems[j].sum_sq += blk.sum_sq[j];
      result.systems[j].sum_quad += blk.sum_quad[j];
    }
  }

  const auto m = static_cast<double>(cfg.m);
  for (size_t j = 0; j < n_systems; ++j) {
    SystemStats& stats = result.systems[j];
    double mean_sq = stats.sum_sq / m;
    stats.beta = std::sqrt(mean_sq);
    if (cfg.m > 1 && stats.beta > 0.0) {
      double var_sq = (stats.sum_quad / m - mean_sq * mean_sq) * m / (m - 1.0);
      if (var_sq < 0.0) var_sq = 0.0;
      stats.se_beta = std::sqrt(var_sq / m) / (2.0 * stats.beta);
    }
  }
  const SystemStats& reference = result.systems.front();
  for (size_t j = 0; j < n_systems; ++j) {
    SystemStats& stats = result.systems[j];
    if (j == 0) {
      stats.gamma = 1.0;
      stats.se_gamma = 0.0;
      continue;
    }
    if (reference.beta > 0.0) {
      stats.gamma = stats.beta / reference.beta;
      double rel_j = stats.beta > 0.0 ? stats.se_beta / stats.beta : 0.0;
      double rel_0 = reference.se_beta / reference.beta;
      stats.se_gamma = stats.gamma * std::sqrt(rel_j * rel_j + rel_0 * rel_0);
    }
  }
  return result;
}

ExperimentResult run_sums(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.kind = ExperimentKind::Sums;
  return run_experiment(cfg);
}

ExperimentResult run_linsys(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.kind = ExperimentKind::LinSys;
  return run_experiment(cfg);
}

ExperimentResult run_eig(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.kind = ExperimentKind::Eig;
  return run_experiment(cfg);
}

ExperimentResult run_products(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.kind = ExperimentKind::Products;
  return run_experiment(cfg);
}

double rms(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += v * v;
  return std::sqrt(acc / static_cast<double>(values.size()));
}

double standard_error_of_rms(std::span<const double> values) {
  const size_t m = values.size();
  if (m < 2) return 0.0;
  double mean_sq = 0.0;
  for (double v : values) mean_sq += v * v;
  mean_sq /= static_cast<double>(m);
  if (mean_sq == 0.0) return 0.0;
  double var = 0.0;
  for (double v : values) {
    double d = v * v - mean_sq;
    var += d * d;
  }
  var /= static_cast<double>(m - 1);
  double se_mean_sq = std::sqrt(var / static_cast<double>(m));
  return se_mean_sq / (2.0 * std::sqrt(mean_sq));
}

std::vector<double> gamma_ratios(const ExperimentResult& result) {
  std::vector<double> out;
  out.reserve(result.systems.size());
  for (auto& stats : result.systems) out.push_back(stats.gamma);
  return out;
}

DensityReport run_density(const std::string& name, const SystemSpec& spec, std::int64_t samples,
                          int bins, std::uint64_t master_seed) {
  if (spec.mode != RoundingMode::RStar)
    throw InvalidSpec("density comparison applies to round-to-nearest systems");
  if (samples < 1 || bins < 1) throw InvalidSpec("density needs samples >= 1 and bins >= 1");

  DensityReport report;
  report.system_name = name;
  report.spec = spec;
  report.samples = samples;
  report.bins = bins;
  report.master_seed = master_seed;

  const double edge = std::ldexp(1.0, spec.k - spec.u - 1);  // density support half-width
  const double width = 2.0 * edge / bins;
  std::vector<std::int64_t> counts(static_cast<size_t>(bins), 0);

  RngStream stream = substream(master_seed, "density", 0);
  double sum_d = 0.0, sum_d2 = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double z = stream.uniform01();
    Real x = std::exp2(static_cast<Real>(spec.k) * (static_cast<Real>(z) - 1.0L));
    Real delta_r = ref_sub(x, value_of(spec, fl(spec, x))) / x;
    double delta = static_cast<double>(delta_r);
    sum_d += delta;
    sum_d2 += delta * delta;
    int idx = static_cast<int>(std::floor((delta + edge) / width));
    if (idx >= 0 && idx < bins) ++counts[static_cast<size_t>(idx)];
  }

  const auto m = static_cast<double>(samples);
  report.mean_delta = sum_d / m;
  report.rms_delta = std::sqrt(sum_d2 / m);
  double var_d = (sum_d2 / m - report.mean_delta * report.mean_delta);
  report.se_mean_delta = std::sqrt(std::max(var_d, 0.0) / m);

  report.bin_center.resize(static_cast<size_t>(bins));
  report.empirical.resize(static_cast<size_t>(bins));
  report.theoretical.resize(static_cast<size_t>(bins));
  report.bin_se.resize(static_cast<size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    double lo = -edge + i * width;
    double hi = lo + width;
    report.bin_center[static_cast<size_t>(i)] = 0.5 * (lo + hi);
    report.empirical[static_cast<size_t>(i)] = counts[static_cast<size_t>(i)] / (m * width);

    // Bin probability by composite Simpson; the density is piecewise smooth.
    constexpr int kPanels = 64;
    double h = (hi - lo) / kPanels;
    double integral = theory::delta_density(spec.k, spec.u, lo) +
                      theory::delta_density(spec.k, spec.u, hi);
    for (int t = 1; t < kPanels; ++t)
      integral += theory::delta_density(spec.k, spec.u, lo + t * h) * (t % 2 == 1 ? 4.0 : 2.0);
    double prob = integral * h / 3.0;
    report.theoretical[static_cast<size_t>(i)] = prob / width;
    report.bin_se[static_cast<size_t>(i)] = std::sqrt(std::max(prob * (1.0 - prob), 0.0) / m) / width;
  }
  return report;
}

}  // namespace radixlab
