// Command-line front end: single runs, seed ensembles, the two-government
// policy comparison, one-at-a-time sensitivity sweeps, config validation and
// a scaling benchmark.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metro/config.hpp"
#include "metro/errors.hpp"
#include "metro/experiments.hpp"
#include "metro/scheduler.hpp"

namespace fs = std::filesystem;
using namespace metro;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct CommonOpts {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> overrides;  // name=value
  int workers = 1;
  bool quiet = false;
};

std::string default_output_dir() {
  const char* env = std::getenv("METROSIM_OUTPUT_DIR");
  return env && *env ? env : "out";
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config,-c", opts.config_path,
                  "world + simulation configuration file (JSON)")
      ->required();
  cmd->add_option("--output,-o", opts.output_dir,
                  "output directory (default: $METROSIM_OUTPUT_DIR or ./out)");
  cmd->add_option("--set", opts.overrides,
                  "override a simulation parameter, e.g. --set tax_rate=0.05")
      ->expected(-1);
  cmd->add_option("--workers,-j", opts.workers, "worker threads for multi-run commands");
  cmd->add_flag("--quiet,-q", opts.quiet, "suppress progress lines on stderr");
}

// --seed/--months/--mode are sugar for --set
void add_single_overrides(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option_function<std::string>(
      "--seed", [&opts](const std::string& v) { opts.overrides.push_back("seed=" + v); },
      "random seed");
  cmd->add_option_function<std::string>(
      "--months", [&opts](const std::string& v) { opts.overrides.push_back("months=" + v); },
      "simulated months");
  cmd->add_option_function<std::string>(
      "--mode",
      [&opts](const std::string& v) { opts.overrides.push_back("government_mode=" + v); },
      "government mode: individual or unified");
  cmd->add_option_function<std::string>(
      "--sample-fraction",
      [&opts](const std::string& v) { opts.overrides.push_back("sample_fraction=" + v); },
      "share of the target population instantiated");
}

LoadedConfig load_with_overrides(const CommonOpts& opts) {
  LoadedConfig loaded = load_config_file(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--set expects name=value, got '" + kv + "'");
    }
    apply_override(loaded.sim, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return loaded;
}

fs::path prepare_dir(const std::string& base, const std::string& name) {
  fs::path dir = fs::path(base.empty() ? default_output_dir() : base) / name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::string run_dir_name(std::uint64_t seed) { return "run-s" + std::to_string(seed); }

std::string summary_text(const RunRecord& rec, const RunSummary& sum) {
  char buf[1024];
  std::snprintf(buf, sizeof buf,
                "seed %llu\n"
                "mode %s\n"
                "months %d\n"
                "final_weighted_qli %.12g\n"
                "mean_weighted_qli_final_year %.12g\n"
                "final_gini %.12g\n"
                "mean_gini %.12g\n"
                "mean_income_gini %.12g\n"
                "gdp_pc_growth %.12g\n"
                "mean_unemployment %.12g\n"
                "cumulative_gdp %.12g\n"
                "total_units_produced %.12g\n"
                "total_units_sold %.12g\n"
                "housing_sink_total %.12g\n"
                "births %lld\ndeaths %lld\nhouse_sales %lld\nhires %lld\nfires %lld\n",
                static_cast<unsigned long long>(rec.seed), to_string(rec.mode).c_str(),
                sum.months, rec.final_weighted_qli, rec.mean_weighted_qli_final_year,
                rec.final_gini, rec.mean_gini, rec.mean_income_gini, rec.gdp_pc_growth,
                rec.mean_unemployment, rec.cumulative_gdp, sum.total_units_produced,
                sum.total_units_sold,
                sum.housing_sink_total, static_cast<long long>(sum.total_births),
                static_cast<long long>(sum.total_deaths),
                static_cast<long long>(sum.total_house_sales),
                static_cast<long long>(sum.total_hires),
                static_cast<long long>(sum.total_fires));
  return buf;
}

void persist_run(const fs::path& dir, const LoadedConfig& resolved, const RunRecord& rec,
                 const RunResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "'");
  write_series(result.rows, (dir / "series.csv").string());
  write_text(dir / "summary.txt", summary_text(rec, result.summary));
  LoadedConfig snapshot = resolved;
  snapshot.sim.seed = rec.seed;
  snapshot.sim.government_mode = rec.mode;
  write_text(dir / "config.json", config_to_json(snapshot));
}

const char* kRecordsHeader =
    "seed,mode,overrides,final_weighted_qli,mean_weighted_qli_final_year,final_gini,"
    "mean_gini,mean_income_gini,gdp_pc_growth,mean_unemployment,cumulative_gdp,"
    "total_production,final_total_wealth";

std::string record_csv_line(const RunRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%llu,%s,%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g",
                static_cast<unsigned long long>(r.seed), to_string(r.mode).c_str(),
                r.overrides.c_str(), r.final_weighted_qli, r.mean_weighted_qli_final_year,
                r.final_gini, r.mean_gini, r.mean_income_gini, r.gdp_pc_growth,
                r.mean_unemployment, r.cumulative_gdp, r.total_production,
                r.final_total_wealth);
  return buf;
}

void write_records(const fs::path& path, const std::vector<RunRecord>& records) {
  std::string text = std::string(kRecordsHeader) + "\n";
  for (const RunRecord& r : records) text += record_csv_line(r) + "\n";
  write_text(path, text);
}

int cmd_run(const CommonOpts& opts) {
  LoadedConfig loaded = load_with_overrides(opts);
  ProgressFn progress;
  if (!opts.quiet) {
    progress = [](int year) { std::fprintf(stderr, "year %d done\n", year); };
  }
  RunResult result = run_simulation(loaded.world, loaded.sim, progress);
  RunRecord rec = summarize_run(result, loaded.sim);
  const fs::path dir = prepare_dir(opts.output_dir, run_dir_name(loaded.sim.seed));
  persist_run(dir, loaded, rec, result);
  std::printf("output %s\n", dir.string().c_str());
  std::printf("%s", summary_text(rec, result.summary).c_str());
  return 0;
}

int cmd_ensemble(const CommonOpts& opts, int runs) {
  LoadedConfig loaded = load_with_overrides(opts);
  const fs::path dir = prepare_dir(
      opts.output_dir,
      "ens-" + to_string(loaded.sim.government_mode) + "-s" + std::to_string(loaded.sim.seed));
  auto sink = [&](const RunRecord& rec, const RunResult& result) {
    persist_run(dir / run_dir_name(rec.seed), loaded, rec, result);
    if (!opts.quiet) {
      std::fprintf(stderr, "seed %llu done\n", static_cast<unsigned long long>(rec.seed));
    }
  };
  EnsembleResult ensemble = run_ensemble(loaded.world, loaded.sim, runs, opts.workers, sink);
  write_records(dir / "records.csv", ensemble.runs);
  std::printf("output %s\n", dir.string().c_str());
  for (const RunRecord& r : ensemble.runs) std::printf("%s\n", record_csv_line(r).c_str());
  return 0;
}

std::string policy_report_text(const PolicyReport& report) {
  auto arm_mean = [](const EnsembleResult& arm) {
    double s = 0.0;
    for (const RunRecord& r : arm.runs) s += r.mean_weighted_qli_final_year;
    return s / static_cast<double>(arm.runs.size());
  };
  char buf[768];
  std::snprintf(buf, sizeof buf,
                "comparison statistic: mean population-weighted QLI over the final year\n"
                "individual arm mean %.12g\n"
                "unified arm mean %.12g\n"
                "welch_t (unified - individual) t=%.6g df=%.6g p=%.6g\n"
                "decision at 5%%: %s\n",
                arm_mean(report.individual), arm_mean(report.unified), report.welch.t,
                report.welch.df, report.welch.p_value,
                report.welch.reject_at_5pct ? "reject equal means" : "cannot reject equal means");
  return buf;
}

void write_trajectories(const fs::path& dir, const PolicyReport& report) {
  std::string arm = "month,individual,unified\n";
  for (std::size_t m = 0; m < report.individual_mean_weighted_qli.size(); ++m) {
    char line[128];
    std::snprintf(line, sizeof line, "%zu,%.12g,%.12g\n", m,
                  report.individual_mean_weighted_qli[m], report.unified_mean_weighted_qli[m]);
    arm += line;
  }
  write_text(dir / "arm-qli.csv", arm);

  auto municipal = [&](const std::vector<std::vector<double>>& qli, const fs::path& path) {
    std::string text = "month";
    for (int id : report.municipality_ids) text += ",m" + std::to_string(id);
    text += "\n";
    if (!qli.empty()) {
      for (std::size_t m = 0; m < qli[0].size(); ++m) {
        text += std::to_string(m);
        for (const auto& series : qli) {
          char val[32];
          std::snprintf(val, sizeof val, ",%.12g", series[m]);
          text += val;
        }
        text += "\n";
      }
    }
    write_text(path, text);
  };
  municipal(report.individual_municipal_qli, dir / "municipal-qli-individual.csv");
  municipal(report.unified_municipal_qli, dir / "municipal-qli-unified.csv");
}

int cmd_policy(const CommonOpts& opts, int runs_per_arm, bool unmatched) {
  LoadedConfig loaded = load_with_overrides(opts);
  const fs::path dir =
      prepare_dir(opts.output_dir, "policy-s" + std::to_string(loaded.sim.seed));
  auto sink = [&](const RunRecord& rec, const RunResult& result) {
    persist_run(dir / to_string(rec.mode) / run_dir_name(rec.seed), loaded, rec, result);
    if (!opts.quiet) {
      std::fprintf(stderr, "%s seed %llu done\n", to_string(rec.mode).c_str(),
                   static_cast<unsigned long long>(rec.seed));
    }
  };
  PolicyReport report = policy_experiment(loaded.world, loaded.sim, runs_per_arm, opts.workers,
                                          !unmatched, sink);
  write_records(dir / "individual" / "records.csv", report.individual.runs);
  write_records(dir / "unified" / "records.csv", report.unified.runs);
  write_trajectories(dir, report);
  write_text(dir / "report.txt", policy_report_text(report));
  std::printf("output %s\n", dir.string().c_str());
  std::printf("%s", policy_report_text(report).c_str());
  return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& parameter,
              const std::vector<double>& values, int runs) {
  LoadedConfig loaded = load_with_overrides(opts);
  const fs::path dir = prepare_dir(opts.output_dir, "sweep-" + parameter);
  SweepResult sweep =
      sensitivity_sweep(loaded.world, loaded.sim, parameter, values, runs, opts.workers);
  std::string table = "value,mean_cumulative_gdp,mean_gini,mean_income_gini,"
                      "mean_unemployment,mean_total_production,mean_final_wealth\n";
  for (const SweepCell& cell : sweep.cells) {
    char line[256];
    std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", cell.value,
                  cell.mean_cumulative_gdp, cell.mean_gini, cell.mean_income_gini,
                  cell.mean_unemployment, cell.mean_total_production, cell.mean_final_wealth);
    table += line;
    char cellname[64];
    std::snprintf(cellname, sizeof cellname, "value-%.12g", cell.value);
    write_records(prepare_dir(dir.string(), cellname) / "records.csv", cell.ensemble.runs);
  }
  write_text(dir / "table.csv", table);
  std::printf("output %s\n", dir.string().c_str());
  std::printf("%s", table.c_str());
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  load_with_overrides(opts);
  std::printf("ok %s\n", opts.config_path.c_str());
  return 0;
}

int cmd_bench(const CommonOpts& opts, const std::vector<int>& agent_counts, int months) {
  LoadedConfig loaded = load_with_overrides(opts);
  double target = 0.0;
  for (const auto& m : loaded.world.municipalities) {
    target += static_cast<double>(m.target_population);
  }
  std::printf("agents,months,seconds,agent_months_per_second\n");
  double prev_seconds = 0.0;
  int prev_agents = 0;
  bool scaling_ok = true;
  for (int agents : agent_counts) {
    SimConfig config = loaded.sim;
    config.sample_fraction = std::min(1.0, static_cast<double>(agents) / target);
    config.months = months;
    const auto t0 = std::chrono::steady_clock::now();
    RunResult result = run_simulation(loaded.world, config);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::int64_t actual = result.rows.empty() ? 0 : result.rows.back().population;
    std::printf("%d,%d,%.3f,%.0f\n", agents, months, seconds,
                static_cast<double>(actual) * months / seconds);
    if (prev_agents > 0 && agents == prev_agents * 2 && prev_seconds > 0.0) {
      const double ratio = seconds / prev_seconds;
      std::fprintf(stderr, "scaling %d -> %d: %.2fx (budget 2.60x)\n", prev_agents, agents,
                   ratio);
      if (ratio > 2.6) scaling_ok = false;
    }
    prev_seconds = seconds;
    prev_agents = agents;
  }
  std::fprintf(stderr, "scaling %s\n", scaling_ok ? "ok" : "exceeded budget");
  return scaling_ok ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metrosim: spatial agent-based simulator of a metropolitan economy"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  auto* run = app.add_subcommand("run", "run a single simulation");
  add_common(run, run_opts);
  add_single_overrides(run, run_opts);

  CommonOpts ens_opts;
  int ens_runs = 10;
  auto* ens = app.add_subcommand("ensemble", "run N seeds and collect records");
  add_common(ens, ens_opts);
  add_single_overrides(ens, ens_opts);
  ens->add_option("--runs,-n", ens_runs, "number of runs")->check(CLI::PositiveNumber);

  CommonOpts pol_opts;
  int runs_per_arm = 10;
  bool unmatched = false;
  auto* pol = app.add_subcommand("policy", "individual vs unified government comparison");
  add_common(pol, pol_opts);
  add_single_overrides(pol, pol_opts);
  pol->add_option("--runs-per-arm", runs_per_arm, "runs per government mode")
      ->check(CLI::PositiveNumber);
  pol->add_flag("--unmatched-seeds", unmatched,
                "use disjoint seed lists instead of common random numbers");

  CommonOpts sweep_opts;
  std::string sweep_param;
  std::vector<double> sweep_values;
  int sweep_runs = 10;
  auto* sweep = app.add_subcommand("sweep", "one-at-a-time sensitivity sweep");
  add_common(sweep, sweep_opts);
  add_single_overrides(sweep, sweep_opts);
  sweep->add_option("--param", sweep_param, "SimConfig parameter name")->required();
  sweep->add_option("--values", sweep_values, "values to sweep")->required()->expected(-1);
  sweep->add_option("--runs,-n", sweep_runs, "runs per value")->check(CLI::PositiveNumber);

  CommonOpts val_opts;
  auto* val = app.add_subcommand("validate-config", "validate a configuration file");
  add_common(val, val_opts);

  CommonOpts bench_opts;
  std::vector<int> bench_agents{25000, 50000, 100000, 200000};
  int bench_months = 24;
  auto* bench = app.add_subcommand("bench", "wall-time scaling benchmark");
  add_common(bench, bench_opts);
  bench->add_option("--agents", bench_agents, "agent-count ladder")->expected(-1);
  bench->add_option("--bench-months", bench_months, "months per benchmark run");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (ens->parsed()) return cmd_ensemble(ens_opts, ens_runs);
    if (pol->parsed()) return cmd_policy(pol_opts, runs_per_arm, unmatched);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, sweep_param, sweep_values, sweep_runs);
    if (val->parsed()) return cmd_validate(val_opts);
    if (bench->parsed()) return cmd_bench(bench_opts, bench_agents, bench_months);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
