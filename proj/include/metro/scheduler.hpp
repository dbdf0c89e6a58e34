#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "metro/simconfig.hpp"
#include "metro/stats.hpp"
#include "metro/world.hpp"

namespace metro {

constexpr int kStartYear = 2000;

struct Clock {
  int month_index = 0;

  bool quarter_end() const { return month_index % 3 == 2; }
  int year() const { return kStartYear + month_index / 12; }
  int month_of_year() const { return month_index % 12; }
};

// End-of-run aggregates not derivable from the CSV columns.
struct RunSummary {
  std::uint64_t seed = 0;
  GovernmentMode mode = GovernmentMode::individual;
  int months = 0;
  double total_units_produced = 0.0;
  double total_units_sold = 0.0;
  double cumulative_gdp = 0.0;
  double housing_sink_total = 0.0;
  double final_total_money = 0.0;
  std::int64_t total_births = 0;
  std::int64_t total_deaths = 0;
  std::int64_t total_house_sales = 0;
  std::int64_t total_hires = 0;
  std::int64_t total_fires = 0;
};

struct RunResult {
  std::vector<MonthlyRow> rows;  // per-municipality + aggregate, month by month
  RunSummary summary;
};

using ProgressFn = std::function<void(int year_completed)>;

// Executes one simulated month in the fixed order: business-day production
// loop, demographics, wage payments, family cash pooling, goods market, tax
// ledger finalization, QLI update and fiscal spending, price/profit step,
// labor market, housing market, statistics.
std::vector<MonthlyRow> run_month(World& world, const SimConfig& config, int month_index,
                                  int run_id = 0);

// Generates the world from (spec, config) and iterates run_month.
RunResult run_simulation(const WorldSpec& spec, const SimConfig& config,
                         const ProgressFn& progress = {});

}  // namespace metro
