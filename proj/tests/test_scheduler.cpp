#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "metro/scheduler.hpp"

using namespace metro;
using metro::testing::tiny_config;
using metro::testing::tiny_spec;
using metro::testing::WorldBuilder;

TEST_CASE("clock derives quarters and years") {
  CHECK(Clock{0}.year() == 2000);
  CHECK(Clock{0}.quarter_end() == false);
  CHECK(Clock{2}.quarter_end() == true);
  CHECK(Clock{239}.year() == 2019);
  CHECK(Clock{240}.year() == 2020);
}

TEST_CASE("a world without firms still ages its people") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 50.0);
  builder.add_citizen(fam, 30, 5);
  World world = builder.build();
  SimConfig config;
  config.sample_fraction = 1.0;
  const auto rows = run_month(world, config, 0);
  CHECK(world.citizens[0].age_months == 30 * 12 + 1);
  CHECK(rows.size() == 2);  // one municipality + aggregate
  CHECK(rows.back().gdp == 0.0);
  CHECK(rows.back().population == 1);
}

TEST_CASE("one worker at alpha 0.3 yields 63 units over 21 business days") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 0.0);
  const std::uint32_t worker = builder.add_citizen(fam, 30, 10);
  const std::uint32_t firm = builder.add_firm(0, {1, 1}, 1e6, 0.0, 2.0);
  builder.employ(worker, firm);
  World world = builder.build();
  SimConfig config;
  run_month(world, config, 0);
  CHECK(world.flows.units_produced == doctest::Approx(63.0));
}

TEST_CASE("simulations are bit-reproducible per seed and diverge across seeds") {
  WorldSpec spec = tiny_spec(2, 600, 3);
  for (int age = 0; age < 120; ++age) spec.mortality_table.push_back({age, 0.001, 0.001});
  for (int age = 15; age <= 49; ++age) spec.fertility_table.push_back({age, 0.01});
  SimConfig config = tiny_config();
  config.months = 18;

  const RunResult a = run_simulation(spec, config);
  const RunResult b = run_simulation(spec, config);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(format_row(a.rows[i]) == format_row(b.rows[i]));
  }

  config.seed = 1234;
  const RunResult c = run_simulation(spec, config);
  bool differs = false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (format_row(a.rows[i]) != format_row(c.rows[i])) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("row inventory: months times municipalities plus aggregates") {
  WorldSpec spec = tiny_spec(3, 300, 1);
  SimConfig config = tiny_config();
  config.months = 1;
  const RunResult result = run_simulation(spec, config);
  CHECK(result.rows.size() == 4);

  config.months = 14;
  const RunResult longer = run_simulation(spec, config);
  CHECK(longer.rows.size() == 14 * 4);
  CHECK(longer.rows.back().month == 13);
}

TEST_CASE("money moves but is conserved up to the housing sink") {
  WorldSpec spec = tiny_spec(2, 900, 4);
  for (int age = 0; age < 120; ++age) spec.mortality_table.push_back({age, 0.002, 0.002});
  for (int age = 15; age <= 49; ++age) spec.fertility_table.push_back({age, 0.02});
  SimConfig config = tiny_config();
  config.months = 30;

  World world = generate_world(spec, config);
  const double initial = world.total_money();
  REQUIRE(initial > 0.0);
  for (int month = 0; month < config.months; ++month) {
    run_month(world, config, month);
    const double balance =
        world.total_money() + world.housing_sink_total + world.estates_unclaimed_total;
    CHECK(balance == doctest::Approx(initial).epsilon(1e-9));
  }
  CHECK(world.government.treasury >= 0.0);
}

TEST_CASE("the fiscal loop converts taxes into QLI and public purchases") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 100.0);
  builder.add_citizen(fam, 30, 5);
  const std::uint32_t firm = builder.add_firm(0, {1, 1}, 0.0, 1000.0, 1.0);
  World world = builder.build();
  SimConfig config;
  config.tax_rate = 0.25;
  config.treasury_retention = 0.02;
  run_month(world, config, 0);
  // tax collected at the sale, QLI moved, the budget bought goods from the
  // firm, and only the retained share stays on the books
  CHECK(world.flows.taxes[0] > 0.0);
  CHECK(world.government.qli(0) > 1.0);
  CHECK(world.flows.public_spending == doctest::Approx(0.98 * world.flows.taxes[0]));
  CHECK(world.firms[firm].stock < 1000.0);
  CHECK(world.government.treasury == doctest::Approx(0.02 * world.flows.taxes[0]));
  CHECK(world.government.retained == doctest::Approx(world.government.treasury).epsilon(1e-9));
  CHECK(world.total_money() == doctest::Approx(100.0));
}

TEST_CASE("quarterly profit distribution fires only on quarter ends") {
  WorldSpec spec = tiny_spec(1, 60, 2);
  SimConfig config = tiny_config();
  config.months = 3;
  // just exercises the path; assertions are on accumulator reset behavior
  World world = generate_world(spec, config);
  run_month(world, config, 0);
  run_month(world, config, 1);
  double rev_before = 0.0;
  for (const Firm& f : world.firms) rev_before += f.revenue_quarter;
  run_month(world, config, 2);
  for (const Firm& f : world.firms) {
    CHECK(f.revenue_quarter == 0.0);
    CHECK(f.costs_quarter == 0.0);
  }
  (void)rev_before;
}

TEST_CASE("empty worlds cannot happen, but empty months can") {
  // all citizens die in month 0; later months must still produce rows
  WorldSpec spec = tiny_spec(1, 30, 1);
  for (int age = 0; age < 120; ++age) spec.mortality_table.push_back({age, 1.0, 1.0});
  SimConfig config = tiny_config();
  config.months = 3;
  const RunResult result = run_simulation(spec, config);
  CHECK(result.rows.size() == 6);
  CHECK(result.rows.back().population == 0);
  CHECK(result.rows.back().qli == 0.0);  // aggregate over zero population
}
