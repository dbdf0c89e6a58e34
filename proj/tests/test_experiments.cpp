#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "metro/errors.hpp"
#include "metro/experiments.hpp"

using namespace metro;
using metro::testing::tiny_config;
using metro::testing::tiny_spec;

TEST_CASE("welch t: identical samples give t = 0, no rejection") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const auto r = welch_t(a, a);
  CHECK(r.t == 0.0);
  CHECK(!r.reject_at_5pct);
}

TEST_CASE("welch t: a large clean shift is rejected") {
  const std::vector<double> a{1.0, 1.01, 0.99, 1.0, 1.02};
  std::vector<double> b;
  for (double x : a) b.push_back(x + 10.0);
  const auto r = welch_t(a, b);
  CHECK(r.reject_at_5pct);
  CHECK(r.t < 0.0);
}

TEST_CASE("welch t matches the reference implementation") {
  // frozen oracle values (scipy.stats.ttest_ind, equal_var=False)
  const std::vector<double> a{2.1, 2.0, 1.9, 2.2};
  const std::vector<double> b{2.4, 2.3, 2.5, 2.2};
  const auto r = welch_t(a, b);
  CHECK(r.t == doctest::Approx(-3.2863353450309947).epsilon(1e-12));
  CHECK(r.df == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(r.p_value == doctest::Approx(0.016689984315831505).epsilon(1e-9));
  CHECK(r.reject_at_5pct);

  const std::vector<double> c{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> d{2.5, 3.5, 4.5, 5.5, 6.5};
  const auto r2 = welch_t(c, d);
  CHECK(r2.t == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(r2.df == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(r2.p_value == doctest::Approx(0.172003291951911).epsilon(1e-9));
  CHECK(!r2.reject_at_5pct);

  const std::vector<double> e{10.0, 12.0, 9.0, 11.0, 10.5, 9.5};
  const std::vector<double> f{10.1, 11.9, 9.2};
  const auto r3 = welch_t(e, f);
  CHECK(r3.t == doctest::Approx(-0.073422309821435).epsilon(1e-9));
  CHECK(r3.df == doctest::Approx(3.29936866833064).epsilon(1e-9));
  CHECK(r3.p_value == doctest::Approx(0.945698507500113).epsilon(1e-9));
}

TEST_CASE("welch t is antisymmetric and shift-invariant") {
  RngStream rng(8, 0, Phase::goods, 0);
  for (int i = 0; i < 40; ++i) {
    std::vector<double> a, b;
    const int na = 2 + static_cast<int>(rng.uniform_below(10));
    const int nb = 2 + static_cast<int>(rng.uniform_below(10));
    for (int k = 0; k < na; ++k) a.push_back(rng.uniform(0, 10));
    for (int k = 0; k < nb; ++k) b.push_back(rng.uniform(0, 10));

    const auto ab = welch_t(a, b);
    const auto ba = welch_t(b, a);
    CHECK(ab.t == -ba.t);
    CHECK(ab.df == ba.df);
    CHECK(ab.reject_at_5pct == ba.reject_at_5pct);

    std::vector<double> a_shift, b_shift;
    for (double x : a) a_shift.push_back(x + 1000.0);
    for (double x : b) b_shift.push_back(x + 1000.0);
    const auto shifted = welch_t(a_shift, b_shift);
    CHECK(shifted.t == doctest::Approx(ab.t).epsilon(1e-9));
    CHECK(shifted.df == doctest::Approx(ab.df).epsilon(1e-9));
  }
}

TEST_CASE("welch t rejects degenerate input") {
  CHECK_THROWS_AS(welch_t(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      welch_t(std::vector<double>{3.0, 3.0, 3.0}, std::vector<double>{5.0, 5.0}),
      std::invalid_argument);
}

TEST_CASE("an ensemble of one equals the single run") {
  WorldSpec spec = tiny_spec(1, 150, 2);
  SimConfig config = tiny_config();
  config.months = 6;
  const auto ensemble = run_ensemble(spec, config, 1);
  const RunResult single = run_simulation(spec, config);
  const RunRecord record = summarize_run(single, config);
  REQUIRE(ensemble.runs.size() == 1);
  CHECK(ensemble.runs[0].seed == record.seed);
  CHECK(ensemble.runs[0].final_weighted_qli == record.final_weighted_qli);
  CHECK(ensemble.runs[0].final_gini == record.final_gini);
  CHECK(ensemble.runs[0].cumulative_gdp == record.cumulative_gdp);
}

TEST_CASE("ensembles are reproducible and worker-count independent") {
  WorldSpec spec = tiny_spec(2, 240, 2);
  SimConfig config = tiny_config();
  config.months = 8;

  const auto once = run_ensemble(spec, config, 4, 1);
  const auto again = run_ensemble(spec, config, 4, 1);
  const auto parallel = run_ensemble(spec, config, 4, 4);
  REQUIRE(once.runs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(once.runs[i].seed == config.seed + i);
    CHECK(once.runs[i].final_weighted_qli == again.runs[i].final_weighted_qli);
    CHECK(once.runs[i].final_weighted_qli == parallel.runs[i].final_weighted_qli);
    CHECK(once.runs[i].cumulative_gdp == parallel.runs[i].cumulative_gdp);
    CHECK(once.runs[i].final_gini == parallel.runs[i].final_gini);
  }
}

TEST_CASE("policy arms agree on a one-municipality world") {
  WorldSpec spec = tiny_spec(1, 200, 2);
  SimConfig config = tiny_config();
  config.months = 10;
  const auto report = policy_experiment(spec, config, 2, 1, true);
  for (std::size_t i = 0; i < report.individual.runs.size(); ++i) {
    CHECK(report.individual.runs[i].final_weighted_qli ==
          report.unified.runs[i].final_weighted_qli);
    CHECK(report.individual.runs[i].cumulative_gdp == report.unified.runs[i].cumulative_gdp);
    CHECK(report.individual.runs[i].final_gini == report.unified.runs[i].final_gini);
  }
  for (std::size_t m = 0; m < report.individual_mean_weighted_qli.size(); ++m) {
    CHECK(report.individual_mean_weighted_qli[m] == report.unified_mean_weighted_qli[m]);
  }
}

TEST_CASE("matched arms start from the same world") {
  WorldSpec spec = tiny_spec(3, 400, 2);
  SimConfig config = tiny_config();
  config.government_mode = GovernmentMode::individual;
  World individual = generate_world(spec, config);
  config.government_mode = GovernmentMode::unified;
  World unified = generate_world(spec, config);

  REQUIRE(individual.citizens.size() == unified.citizens.size());
  REQUIRE(individual.houses.size() == unified.houses.size());
  REQUIRE(individual.firms.size() == unified.firms.size());
  for (std::size_t i = 0; i < individual.citizens.size(); ++i) {
    CHECK(individual.citizens[i].age_months == unified.citizens[i].age_months);
    CHECK(individual.citizens[i].qualification == unified.citizens[i].qualification);
    CHECK(individual.citizens[i].family == unified.citizens[i].family);
  }
  for (std::size_t i = 0; i < individual.houses.size(); ++i) {
    CHECK(individual.houses[i].coord.x == unified.houses[i].coord.x);
    CHECK(individual.houses[i].size == unified.houses[i].size);
  }
}

TEST_CASE("a single-value sweep is a plain ensemble") {
  WorldSpec spec = tiny_spec(1, 150, 2);
  SimConfig config = tiny_config();
  config.months = 6;
  const std::vector<double> values{0.25};
  const auto sweep = sensitivity_sweep(spec, config, "tax_rate", values, 3, 1);
  const auto plain = run_ensemble(spec, config, 3, 1);
  REQUIRE(sweep.cells.size() == 1);
  REQUIRE(sweep.cells[0].ensemble.runs.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(sweep.cells[0].ensemble.runs[i].final_weighted_qli ==
          plain.runs[i].final_weighted_qli);
    CHECK(sweep.cells[0].ensemble.runs[i].cumulative_gdp == plain.runs[i].cumulative_gdp);
  }
}

TEST_CASE("sweeps reject unknown parameters") {
  WorldSpec spec = tiny_spec(1, 150, 1);
  const std::vector<double> values{1.0};
  CHECK_THROWS_AS(sensitivity_sweep(spec, tiny_config(), "warp_factor", values, 2, 1),
                  ConfigError);
}

TEST_CASE("overrides parse, assign and validate") {
  SimConfig config;
  apply_override(config, "tax_rate", "0.05");
  CHECK(config.tax_rate == 0.05);
  apply_override(config, "government_mode", "unified");
  CHECK(config.government_mode == GovernmentMode::unified);
  apply_override(config, "market_sample_size", "25");
  CHECK(config.market_sample_size == 25);
  apply_override(config, "seed", "123456789012345");
  CHECK(config.seed == 123456789012345ull);

  CHECK_THROWS_AS(apply_override(config, "tax_rate", "1.5"), ConfigError);
  CHECK_THROWS_AS(apply_override(config, "tax_rate", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(config, "months", "1.5"), ConfigError);
  CHECK_THROWS_AS(apply_override(config, "nope", "1"), ConfigError);
}
