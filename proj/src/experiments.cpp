#include "metro/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "metro/errors.hpp"

namespace metro {

namespace {

constexpr int kStableFromMonth = 60;  // validation window starts at year 5

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

RunRecord summarize_run(const RunResult& result, const SimConfig& config,
                        const std::string& overrides) {
  RunRecord rec;
  rec.seed = config.seed;
  rec.mode = config.government_mode;
  rec.overrides = overrides;
  rec.cumulative_gdp = result.summary.cumulative_gdp;
  rec.total_production = result.summary.total_units_produced;
  rec.final_total_wealth = result.summary.final_total_money;

  std::vector<double> qli, ginis, income_ginis, unemployment, gdp;
  std::vector<double> population;
  for (const MonthlyRow& row : result.rows) {
    if (row.municipality != kAggregateId) continue;
    qli.push_back(row.qli);
    ginis.push_back(row.gini);
    income_ginis.push_back(row.gini_labor_income);
    unemployment.push_back(row.unemployment);
    gdp.push_back(row.gdp);
    population.push_back(static_cast<double>(row.population));
  }
  const int months = static_cast<int>(qli.size());
  if (months == 0) return rec;

  rec.final_weighted_qli = qli.back();
  const int tail = std::min(12, months);
  rec.mean_weighted_qli_final_year =
      mean_of(std::span<const double>(qli).subspan(static_cast<std::size_t>(months - tail)));
  rec.final_gini = ginis.back();

  const int stable_from = months > kStableFromMonth ? kStableFromMonth : 0;
  rec.mean_gini = mean_of(
      std::span<const double>(ginis).subspan(static_cast<std::size_t>(stable_from)));
  rec.mean_income_gini = mean_of(
      std::span<const double>(income_ginis).subspan(static_cast<std::size_t>(stable_from)));
  rec.mean_unemployment = mean_of(
      std::span<const double>(unemployment).subspan(static_cast<std::size_t>(stable_from)));

  // year-over-year growth of GDP per capita, annual sums over mean population
  const int years = months / 12;
  std::vector<double> gdp_pc(static_cast<std::size_t>(years), 0.0);
  for (int y = 0; y < years; ++y) {
    double g = 0.0, p = 0.0;
    for (int m = y * 12; m < (y + 1) * 12; ++m) {
      g += gdp[static_cast<std::size_t>(m)];
      p += population[static_cast<std::size_t>(m)];
    }
    gdp_pc[static_cast<std::size_t>(y)] = p > 0.0 ? g / (p / 12.0) : 0.0;
  }
  std::vector<double> growth;
  const int first_year = years > 6 ? 5 : 1;
  for (int y = first_year; y < years; ++y) {
    const double prev = gdp_pc[static_cast<std::size_t>(y - 1)];
    if (prev > 0.0) growth.push_back(gdp_pc[static_cast<std::size_t>(y)] / prev - 1.0);
  }
  rec.gdp_pc_growth = mean_of(growth);
  return rec;
}

EnsembleResult run_ensemble(const WorldSpec& spec, const SimConfig& base, int n_runs,
                            int workers, const RunSink& sink) {
  if (n_runs < 1) throw ConfigError("run_ensemble: n_runs must be >= 1");
  spec.validate();
  base.validate();

  EnsembleResult ensemble;
  ensemble.runs.resize(static_cast<std::size_t>(n_runs));

  std::atomic<int> next{0};
  std::mutex sink_mutex;
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::uint64_t failed_seed = 0;

  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_runs) return;
      SimConfig config = base;
      config.seed = base.seed + static_cast<std::uint64_t>(i);
      try {
        RunResult result = run_simulation(spec, config);
        RunRecord record = summarize_run(result, config);
        ensemble.runs[static_cast<std::size_t>(i)] = record;
        if (sink) {
          std::lock_guard<std::mutex> lock(sink_mutex);
          sink(record, result);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          failed_seed = config.seed;
        }
        next.store(n_runs);
        return;
      }
    }
  };

  const int thread_count = std::max(1, std::min(workers, n_runs));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("ensemble run with seed " + std::to_string(failed_seed) +
                               " failed: " + e.what());
    }
  }
  return ensemble;
}

WelchResult welch_t(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("welch_t: need at least 2 observations per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  const double va = sample_variance(a, ma);
  const double vb = sample_variance(b, mb);
  if (va <= 0.0 && vb <= 0.0) {
    throw std::invalid_argument("welch_t: both samples have zero variance");
  }

  const double ra = va / na;
  const double rb = vb / nb;
  WelchResult r;
  r.t = (ma - mb) / std::sqrt(ra + rb);
  r.df = (ra + rb) * (ra + rb) / (ra * ra / (na - 1.0) + rb * rb / (nb - 1.0));
  const boost::math::students_t dist(r.df);
  r.p_value = 2.0 * boost::math::cdf(dist, -std::abs(r.t));
  r.reject_at_5pct = r.p_value < 0.05;
  return r;
}

PolicyReport policy_experiment(const WorldSpec& spec, const SimConfig& base, int n_per_arm,
                               int workers, bool matched_seeds, const RunSink& sink) {
  if (n_per_arm < 2) throw ConfigError("policy_experiment: need at least 2 runs per arm");

  PolicyReport report;
  for (const auto& m : spec.municipalities) report.municipality_ids.push_back(m.id);
  const std::size_t n_muni = spec.municipalities.size();
  const std::size_t months = static_cast<std::size_t>(base.months);

  auto run_arm = [&](GovernmentMode mode, std::uint64_t seed0, EnsembleResult& out,
                     std::vector<double>& mean_qli,
                     std::vector<std::vector<double>>& municipal_qli) {
    SimConfig config = base;
    config.government_mode = mode;
    config.seed = seed0;
    mean_qli.assign(months, 0.0);
    municipal_qli.assign(n_muni, std::vector<double>(months, 0.0));
    auto arm_sink = [&](const RunRecord& record, const RunResult& result) {
      std::size_t month = 0;
      std::size_t muni = 0;
      for (const MonthlyRow& row : result.rows) {
        if (row.municipality == kAggregateId) {
          mean_qli[month] += row.qli / n_per_arm;
          ++month;
          muni = 0;
        } else {
          municipal_qli[muni][month] += row.qli / n_per_arm;
          ++muni;
        }
      }
      if (sink) sink(record, result);
    };
    out = run_ensemble(spec, config, n_per_arm, workers, arm_sink);
  };

  const std::uint64_t unified_seed0 =
      matched_seeds ? base.seed : base.seed + static_cast<std::uint64_t>(n_per_arm);
  run_arm(GovernmentMode::individual, base.seed, report.individual,
          report.individual_mean_weighted_qli, report.individual_municipal_qli);
  run_arm(GovernmentMode::unified, unified_seed0, report.unified,
          report.unified_mean_weighted_qli, report.unified_municipal_qli);

  std::vector<double> individual_final, unified_final;
  for (const RunRecord& r : report.individual.runs) {
    individual_final.push_back(r.mean_weighted_qli_final_year);
  }
  for (const RunRecord& r : report.unified.runs) {
    unified_final.push_back(r.mean_weighted_qli_final_year);
  }
  report.welch = welch_t(unified_final, individual_final);
  return report;
}

void apply_override(SimConfig& config, const std::string& name, const std::string& value) {
  auto as_double = [&]() {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(name + ": cannot parse '" + value + "' as a number");
    }
  };
  auto as_int = [&]() {
    const double v = as_double();
    if (v != std::floor(v)) throw ConfigError(name + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
  };

  if (name == "alpha") config.alpha = as_double();
  else if (name == "beta") config.beta = as_double();
  else if (name == "tax_rate") config.tax_rate = as_double();
  else if (name == "housing_entry_fraction") config.housing_entry_fraction = as_double();
  else if (name == "vacancy") config.vacancy = as_double();
  else if (name == "market_sample_size") config.market_sample_size = as_int();
  else if (name == "distance_share") config.distance_share = as_double();
  else if (name == "reserve_months") config.reserve_months = as_int();
  else if (name == "markup_step") config.markup_step = as_double();
  else if (name == "wage_base") config.wage_base = as_double();
  else if (name == "qli_gain") config.qli_gain = as_double();
  else if (name == "months") config.months = as_int();
  else if (name == "business_days") config.business_days = as_int();
  else if (name == "seed") config.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (name == "government_mode") config.government_mode = parse_government_mode(value);
  else if (name == "sample_fraction") config.sample_fraction = as_double();
  else if (name == "openings_per_month") config.openings_per_month = as_int();
  else if (name == "treasury_retention") config.treasury_retention = as_double();
  else if (name == "price_floor") config.price_floor = as_double();
  else if (name == "initial_price") config.initial_price = as_double();
  else if (name == "initial_firm_cash") config.initial_firm_cash = as_double();
  else if (name == "price_band_low_months") config.price_band_low_months = as_double();
  else if (name == "price_band_high_months") config.price_band_high_months = as_double();
  else throw ConfigError("unknown parameter '" + name + "'");

  config.validate();
}

SweepResult sensitivity_sweep(const WorldSpec& spec, const SimConfig& base,
                              const std::string& parameter, std::span<const double> values,
                              int n_runs, int workers) {
  SweepResult sweep;
  sweep.parameter = parameter;
  for (double value : values) {
    SimConfig config = base;
    char text[64];
    std::snprintf(text, sizeof text, "%.17g", value);
    apply_override(config, parameter, text);

    SweepCell cell;
    cell.value = value;
    cell.ensemble = run_ensemble(spec, config, n_runs, workers);
    for (RunRecord& r : cell.ensemble.runs) r.overrides = parameter + "=" + text;

    std::vector<double> gdp, ginis, iginis, unemp, production, wealth;
    for (const RunRecord& r : cell.ensemble.runs) {
      gdp.push_back(r.cumulative_gdp);
      ginis.push_back(r.mean_gini);
      iginis.push_back(r.mean_income_gini);
      unemp.push_back(r.mean_unemployment);
      production.push_back(r.total_production);
      wealth.push_back(r.final_total_wealth);
    }
    cell.mean_cumulative_gdp = mean_of(gdp);
    cell.mean_gini = mean_of(ginis);
    cell.mean_income_gini = mean_of(iginis);
    cell.mean_unemployment = mean_of(unemp);
    cell.mean_total_production = mean_of(production);
    cell.mean_final_wealth = mean_of(wealth);
    sweep.cells.push_back(std::move(cell));
  }
  return sweep;
}

}  // namespace metro
