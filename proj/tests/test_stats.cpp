#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "metro/markets.hpp"
#include "metro/scheduler.hpp"
#include "metro/stats.hpp"

using namespace metro;
using metro::testing::tiny_config;
using metro::testing::tiny_spec;
using metro::testing::WorldBuilder;

namespace {

// quadratic-time reference: mean absolute difference over twice the mean
double gini_oracle(const std::vector<double>& v) {
  double diff = 0.0, sum = 0.0;
  for (double a : v) {
    sum += a;
    for (double b : v) diff += std::abs(a - b);
  }
  if (sum <= 0.0) return 0.0;
  const double n = static_cast<double>(v.size());
  return diff / (2.0 * n * n * (sum / n));
}

}  // namespace

TEST_CASE("gini on pinned cases") {
  CHECK(gini(std::vector<double>{5, 5, 5, 5}) == 0.0);
  CHECK(gini(std::vector<double>{0, 0, 0, 10}) == doctest::Approx(0.75));
  CHECK(gini(std::vector<double>{1, 2, 3, 4}) == doctest::Approx(0.25));
  CHECK(gini(std::vector<double>{7}) == 0.0);
  CHECK(gini(std::vector<double>{0, 0}) == 0.0);
  CHECK_THROWS_AS(gini(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(gini(std::vector<double>{1, -2}), std::invalid_argument);
}

TEST_CASE("gini agrees with the pairwise oracle on random lists") {
  RngStream rng(31, 0, Phase::goods, 5);
  for (int instance = 0; instance < 150; ++instance) {
    std::vector<double> values;
    const int n = 1 + static_cast<int>(rng.uniform_below(20));
    for (int i = 0; i < n; ++i) values.push_back(rng.uniform(0.0, 50.0));
    CHECK(gini(values) == doctest::Approx(gini_oracle(values)).epsilon(1e-9));
  }
}

TEST_CASE("gini is scale and replication invariant") {
  RngStream rng(37, 0, Phase::goods, 6);
  for (int instance = 0; instance < 50; ++instance) {
    std::vector<double> values;
    const int n = 2 + static_cast<int>(rng.uniform_below(12));
    for (int i = 0; i < n; ++i) values.push_back(rng.uniform(0.0, 9.0));
    const double base = gini(values);

    std::vector<double> scaled;
    for (double v : values) scaled.push_back(v * 17.5);
    CHECK(gini(scaled) == doctest::Approx(base).epsilon(1e-12));

    std::vector<double> replicated;
    for (int k = 0; k < 4; ++k) replicated.insert(replicated.end(), values.begin(), values.end());
    CHECK(gini(replicated) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("weighted qli on pinned cases") {
  {
    WorldBuilder builder(2, 0.7);
    const std::uint32_t f0 = builder.add_family(0, 0.0);
    builder.add_citizen(f0, 30, 1);
    const std::uint32_t f1 = builder.add_family(1, 0.0);
    builder.add_citizen(f1, 30, 1);
    World world = builder.build();
    CHECK(weighted_qli(world) == doctest::Approx(0.7));
  }
  {
    WorldBuilder builder(2, 0.6);
    const std::uint32_t f0 = builder.add_family(0, 0.0);
    for (int i = 0; i < 100; ++i) builder.add_citizen(f0, 30, 1);
    const std::uint32_t f1 = builder.add_family(1, 0.0);
    for (int i = 0; i < 300; ++i) builder.add_citizen(f1, 30, 1);
    World world = builder.build();
    world.government.qli_base = {0.6, 0.8};
    CHECK(weighted_qli(world) == doctest::Approx(0.75));
  }
  {
    WorldBuilder builder(2, 0.9);
    const std::uint32_t f1 = builder.add_family(1, 0.0);
    builder.add_citizen(f1, 30, 1);
    World world = builder.build();
    world.government.qli_base = {0.1, 0.9};
    CHECK(weighted_qli(world) == doctest::Approx(0.9));
    CHECK(weighted_qli(world) >= 0.1);
    CHECK(weighted_qli(world) <= 0.9);
  }
}

TEST_CASE("weighted qli rejects an empty world") {
  WorldBuilder builder(1);
  World world = builder.build();
  CHECK_THROWS_AS(weighted_qli(world), std::invalid_argument);
}

TEST_CASE("monthly gdp is the pre-tax sales value") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 1000.0);
  const std::uint32_t firm = builder.add_firm(0, {0, 0}, 0.0, 500.0, 2.0);
  World world = builder.build();
  CHECK(gdp_month(world) == 0.0);

  execute_purchase(world, world.families[fam], world.firms[firm], 100.0, 0.25);
  CHECK(gdp_month(world) == doctest::Approx(100.0));

  // identical sale, different tax rate: same gdp
  WorldBuilder builder2;
  const std::uint32_t fam2 = builder2.add_family(0, 1000.0);
  const std::uint32_t firm2 = builder2.add_firm(0, {0, 0}, 0.0, 500.0, 2.0);
  World world2 = builder2.build();
  execute_purchase(world2, world2.families[fam2], world2.firms[firm2], 100.0, 0.0);
  CHECK(gdp_month(world2) == doctest::Approx(gdp_month(world)));
}

TEST_CASE("unemployment counts only the working-age population") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 0.0);
  const std::uint32_t firm = builder.add_firm(0, {0, 0});
  for (int i = 0; i < 95; ++i) builder.employ(builder.add_citizen(fam, 30, 1), firm);
  for (int i = 0; i < 5; ++i) builder.add_citizen(fam, 40, 1);
  builder.add_citizen(fam, 10, 1);  // child: excluded
  builder.add_citizen(fam, 80, 1);  // past the bound: excluded
  World world = builder.build();
  CHECK(unemployment_rate(world) == doctest::Approx(0.05));
}

TEST_CASE("unemployment of an empty workforce is zero") {
  WorldBuilder builder;
  const std::uint32_t fam = builder.add_family(0, 0.0);
  builder.add_citizen(fam, 5, 1);
  World world = builder.build();
  CHECK(unemployment_rate(world) == 0.0);
}

TEST_CASE("series files: shape, round-trip precision, determinism") {
  WorldSpec spec = tiny_spec(10, 300, 1);
  SimConfig config = tiny_config();
  config.months = 1;
  const RunResult result = run_simulation(spec, config);

  const auto dir = std::filesystem::temp_directory_path() / "metro-stats-test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "series.csv").string();
  write_series(result.rows, path);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kSeriesHeader);
  int data_rows = 0;
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    ++data_rows;
    lines.push_back(line);
  }
  CHECK(data_rows == 11);
  CHECK(lines.back().find("AGGREGATE") != std::string::npos);

  // reread values match to 12 significant digits
  const MonthlyRow& probe = result.rows[3];
  std::stringstream ss(lines[3]);
  std::string field;
  for (int skip = 0; skip < 6; ++skip) std::getline(ss, field, ',');
  CHECK(std::stod(field) == doctest::Approx(probe.qli).epsilon(1e-11));

  const std::string path2 = (dir / "series2.csv").string();
  const RunResult again = run_simulation(spec, config);
  write_series(again.rows, path2);
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::stringstream b1, b2;
  b1 << f1.rdbuf();
  b2 << f2.rdbuf();
  CHECK(b1.str() == b2.str());
}

TEST_CASE("aggregate row is consistent with the municipal rows") {
  WorldSpec spec = tiny_spec(4, 500, 2);
  SimConfig config = tiny_config();
  config.months = 6;
  const RunResult result = run_simulation(spec, config);

  const std::size_t stride = 5;
  for (std::size_t month = 0; month < 6; ++month) {
    const auto* rows = &result.rows[month * stride];
    const MonthlyRow& agg = rows[4];
    std::int64_t pop = 0;
    double qli_weighted = 0.0, taxes = 0.0, gdp = 0.0;
    for (int m = 0; m < 4; ++m) {
      pop += rows[m].population;
      qli_weighted += rows[m].qli * static_cast<double>(rows[m].population);
      taxes += rows[m].taxes;
      gdp += rows[m].gdp;
    }
    CHECK(agg.population == pop);
    CHECK(agg.qli == doctest::Approx(qli_weighted / static_cast<double>(pop)).epsilon(1e-9));
    CHECK(agg.taxes == doctest::Approx(taxes).epsilon(1e-9));
    CHECK(agg.gdp == doctest::Approx(gdp).epsilon(1e-9));
  }
}
