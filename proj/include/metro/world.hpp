#pragma once

#include <cstdint>
#include <vector>

#include "metro/demography.hpp"
#include "metro/firms.hpp"
#include "metro/geo.hpp"
#include "metro/government.hpp"
#include "metro/simconfig.hpp"
#include "metro/worldspec.hpp"

namespace metro {

// Per-month flow accounting, reset at the start of every month.
struct MonthFlows {
  std::vector<double> gdp;         // gross (pre-tax) sales by firm municipality
  std::vector<double> taxes;       // snapshot of the monthly tax ledger
  std::vector<double> units_sold;  // by firm municipality
  double units_produced = 0.0;
  double housing_sink = 0.0;  // money retired via municipal-pool house sales
  double estates_unclaimed = 0.0;  // estates with no surviving family to inherit
  double public_spending = 0.0;    // treasury spent on goods this month
  double public_units = 0.0;
  std::vector<double> family_labor_income;  // wages + bonuses pooled this month, by family id
  std::int64_t births = 0;
  std::int64_t deaths = 0;
  std::int64_t house_sales = 0;
  std::int64_t hires = 0;
  std::int64_t fires = 0;

  void reset(std::size_t municipality_count);
};

struct World {
  std::vector<Municipality> municipalities;
  VitalTables vitals;

  std::vector<Citizen> citizens;  // indexed by id; dead entries keep their slot
  std::vector<Family> families;   // indexed by id; dissolved entries keep their slot
  std::vector<House> houses;
  std::vector<Firm> firms;
  Government government;

  std::uint64_t seed = 0;
  MonthFlows flows;
  double housing_sink_total = 0.0;
  double estates_unclaimed_total = 0.0;

  // Rebuilt each month before the markets run; always sorted by id.
  std::vector<std::uint32_t> alive_family_ids;

  std::size_t municipality_count() const { return municipalities.size(); }

  std::int64_t population() const;
  std::vector<std::int64_t> population_by_municipality() const;

  // families + citizens + firms + government treasury
  double total_money() const;

  void rebuild_alive_family_ids();
};

// Builds the synthetic world: population per municipality, families, houses
// (occupied + vacant share), and firms, all placed in their zones. Pure
// function of (spec, config): same inputs, bit-identical world.
World generate_world(const WorldSpec& spec, const SimConfig& config);

}  // namespace metro
