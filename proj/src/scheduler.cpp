#include "metro/scheduler.hpp"

#include <algorithm>

#include "metro/markets.hpp"

namespace metro {

namespace {

// Step 6, second half: the month's collection buys goods from firms to run
// the public services behind the QLI. Purchases spread over firms in
// proportion to their stock value, identically in both government modes; a
// small share of each collection is retained on the books as the capital
// cost of the investment. Unspendable budget (no goods on the market) rolls
// over to the next month.
void spend_treasury(World& world, double retention) {
  Government& gov = world.government;
  const double fresh = gov.treasury - gov.retained - gov.carryover;
  if (fresh > 0.0) gov.retained += retention * fresh;
  double budget = gov.treasury - gov.retained;
  if (budget <= 0.0) {
    gov.carryover = 0.0;
    return;
  }

  double stock_value = 0.0;
  for (const Firm& firm : world.firms) stock_value += firm.stock * firm.price;
  if (stock_value <= 0.0) {
    gov.carryover = budget;
    return;
  }

  const double scale = std::min(1.0, budget / stock_value);
  double spent_total = 0.0;
  for (Firm& firm : world.firms) {
    const double spend = scale * firm.stock * firm.price;
    if (spend <= 0.0) continue;
    const double units = std::min(firm.stock, spend / firm.price);
    firm.stock -= units;
    firm.cash += spend;
    firm.revenue_quarter += spend;
    gov.treasury -= spend;
    spent_total += spend;
    world.flows.public_spending += spend;
    world.flows.public_units += units;
  }
  gov.carryover = std::max(0.0, budget - spent_total);
}

}  // namespace

std::vector<MonthlyRow> run_month(World& world, const SimConfig& config, int month_index,
                                  int run_id) {
  const Clock clock{month_index};
  const std::uint32_t month = static_cast<std::uint32_t>(month_index);
  world.flows.reset(world.municipality_count());

  // (0) business days: production only
  for (int day = 0; day < config.business_days; ++day) {
    for (Firm& firm : world.firms) {
      world.flows.units_produced += produce(firm, config.alpha);
    }
  }

  // (1) demographics
  step_demographics(world, month, world.seed);

  // (2) firms pay wages
  for (Firm& firm : world.firms) {
    pay_wages(firm, world.citizens, config.wage_base);
  }

  // (3) families pool member cash; the pooled flow is the month's labor income
  world.rebuild_alive_family_ids();
  world.flows.family_labor_income.assign(world.families.size(), 0.0);
  for (std::uint32_t fid : world.alive_family_ids) {
    Family& fam = world.families[fid];
    double pooled = 0.0;
    for (std::uint32_t cid : fam.members) {
      Citizen& c = world.citizens[cid];
      pooled += c.money;
      c.money = 0.0;
    }
    fam.savings += pooled;
    world.flows.family_labor_income[fid] = pooled;
  }

  // (4) goods market, in family-id order
  if (!world.firms.empty()) {
    for (std::uint32_t fid : world.alive_family_ids) {
      Family& fam = world.families[fid];
      RngStream rng(world.seed, month, Phase::goods, fid);
      const double spend = decide_consumption(fam.savings, config.beta, rng);
      if (spend <= 0.0) continue;
      const std::int32_t firm_id = choose_firm(world, fam, config.market_sample_size, rng);
      if (firm_id < 0) continue;
      execute_purchase(world, fam, world.firms[static_cast<std::size_t>(firm_id)], spend,
                       config.tax_rate);
    }
  }

  // (5) tax ledger finalization
  world.flows.taxes = world.government.month_collected;

  // (6) QLI update, then the collection is spent back into the region
  world.government.apply_qli_update(world.population_by_municipality());
  spend_treasury(world, config.treasury_retention);

  // (7) prices and profits; quarterly surplus distribution
  for (Firm& firm : world.firms) {
    update_price(firm, config.alpha, config.business_days,
                 PriceBand{config.markup_step, config.price_band_low_months,
                           config.price_band_high_months, config.price_floor});
  }
  if (clock.quarter_end()) {
    for (Firm& firm : world.firms) {
      distribute_profits(firm, world.citizens, config.wage_base, config.reserve_months);
    }
  }

  // (8) labor market
  run_labor_market(world, config, month);

  // (9) housing market and relocations
  run_housing_market(world, config, month);

  // (10) statistics
  return collect_month_rows(world, run_id, month_index);
}

RunResult run_simulation(const WorldSpec& spec, const SimConfig& config,
                         const ProgressFn& progress) {
  World world = generate_world(spec, config);

  RunResult result;
  result.summary.seed = config.seed;
  result.summary.mode = config.government_mode;
  result.summary.months = config.months;
  result.rows.reserve(static_cast<std::size_t>(config.months) *
                      (world.municipality_count() + 1));

  for (int month = 0; month < config.months; ++month) {
    auto rows = run_month(world, config, month);
    for (const MonthlyRow& row : rows) {
      if (row.municipality == kAggregateId) {
        result.summary.cumulative_gdp += row.gdp;
      }
    }
    result.summary.total_units_produced += world.flows.units_produced;
    for (double u : world.flows.units_sold) result.summary.total_units_sold += u;
    result.summary.total_births += world.flows.births;
    result.summary.total_deaths += world.flows.deaths;
    result.summary.total_house_sales += world.flows.house_sales;
    result.summary.total_hires += world.flows.hires;
    result.summary.total_fires += world.flows.fires;
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    if (progress && month % 12 == 11) progress(Clock{month}.year());
  }

  result.summary.housing_sink_total = world.housing_sink_total;
  result.summary.final_total_money = world.total_money();
  return result;
}

}  // namespace metro
