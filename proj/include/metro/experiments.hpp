#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "metro/scheduler.hpp"

namespace metro {

// Per-run outcome record for ensembles and experiments.
struct RunRecord {
  std::uint64_t seed = 0;
  GovernmentMode mode = GovernmentMode::individual;
  std::string overrides;  // "param=value,..." applied on top of the base config

  double final_weighted_qli = 0.0;
  double mean_weighted_qli_final_year = 0.0;
  double final_gini = 0.0;
  double mean_gini = 0.0;            // stable regime (year 5 on)
  double mean_income_gini = 0.0;     // labor-income basis, same window
  double gdp_pc_growth = 0.0;        // mean annual growth, year 5 on
  double mean_unemployment = 0.0;    // years 5..20
  double cumulative_gdp = 0.0;
  double total_production = 0.0;
  double final_total_wealth = 0.0;   // families + citizens + firms
};

RunRecord summarize_run(const RunResult& result, const SimConfig& config,
                        const std::string& overrides = {});

struct EnsembleResult {
  std::vector<RunRecord> runs;  // sorted by seed
};

// Sink called once per finished run (e.g. to persist its CSV); invoked from
// worker threads, serialized by the caller when needed.
using RunSink = std::function<void(const RunRecord&, const RunResult&)>;

// Runs n simulations with seeds base.seed + 0..n-1 across `workers` threads.
// Records come back sorted by seed regardless of completion order.
EnsembleResult run_ensemble(const WorldSpec& spec, const SimConfig& base, int n_runs,
                            int workers = 1, const RunSink& sink = {});

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool reject_at_5pct = false;
};

// Welch's unequal-variance two-sample t test with Welch-Satterthwaite degrees
// of freedom; two-sided decision at 5%. Requires size >= 2 per sample and at
// least one nonzero variance.
WelchResult welch_t(std::span<const double> a, std::span<const double> b);

struct PolicyReport {
  EnsembleResult individual;
  EnsembleResult unified;
  WelchResult welch;  // on mean weighted QLI over the final year, unified - individual
  // mean trajectory over runs, per month
  std::vector<double> individual_mean_weighted_qli;
  std::vector<double> unified_mean_weighted_qli;
  // [municipality][month], averaged over runs
  std::vector<std::vector<double>> individual_municipal_qli;
  std::vector<std::vector<double>> unified_municipal_qli;
  std::vector<int> municipality_ids;
};

// The two-arm comparison: n runs per government mode. With matched_seeds the
// same seed list serves both arms; otherwise the unified arm is offset.
PolicyReport policy_experiment(const WorldSpec& spec, const SimConfig& base, int n_per_arm,
                               int workers = 1, bool matched_seeds = true,
                               const RunSink& sink = {});

struct SweepCell {
  double value = 0.0;
  EnsembleResult ensemble;
  double mean_cumulative_gdp = 0.0;
  double mean_gini = 0.0;
  double mean_income_gini = 0.0;
  double mean_unemployment = 0.0;
  double mean_total_production = 0.0;
  double mean_final_wealth = 0.0;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepCell> cells;
};

// One ensemble per value with a fixed seed list; unknown parameter names are
// rejected. Valid names: alpha, beta, tax_rate, housing_entry_fraction,
// vacancy, market_sample_size, distance_share, reserve_months, markup_step,
// wage_base, qli_gain, months, business_days, sample_fraction, distance
// criterion etc. -- see apply_override.
SweepResult sensitivity_sweep(const WorldSpec& spec, const SimConfig& base,
                              const std::string& parameter, std::span<const double> values,
                              int n_runs, int workers = 1);

// Sets one SimConfig field by name from a string value; throws ConfigError on
// unknown names or invalid values.
void apply_override(SimConfig& config, const std::string& name, const std::string& value);

}  // namespace metro
