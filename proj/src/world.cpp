#include "metro/world.hpp"

#include <algorithm>
#include <cmath>

#include "metro/errors.hpp"
#include "metro/rng.hpp"

namespace metro {

void MonthFlows::reset(std::size_t municipality_count) {
  gdp.assign(municipality_count, 0.0);
  taxes.assign(municipality_count, 0.0);
  units_sold.assign(municipality_count, 0.0);
  units_produced = 0.0;
  housing_sink = 0.0;
  estates_unclaimed = 0.0;
  public_spending = 0.0;
  public_units = 0.0;
  family_labor_income.clear();
  births = deaths = house_sales = hires = fires = 0;
}

std::int64_t World::population() const {
  std::int64_t n = 0;
  for (const Citizen& c : citizens) {
    if (c.alive) ++n;
  }
  return n;
}

std::vector<std::int64_t> World::population_by_municipality() const {
  std::vector<std::int64_t> pop(municipality_count(), 0);
  for (const Family& f : families) {
    if (f.alive) pop[f.municipality] += static_cast<std::int64_t>(f.members.size());
  }
  return pop;
}

double World::total_money() const {
  double total = government.treasury;
  for (const Family& f : families) {
    if (f.alive) total += f.savings;
  }
  for (const Citizen& c : citizens) {
    if (c.alive) total += c.money;
  }
  for (const Firm& f : firms) total += f.cash;
  return total;
}

void World::rebuild_alive_family_ids() {
  alive_family_ids.clear();
  for (const Family& f : families) {
    if (f.alive) alive_family_ids.push_back(f.id);
  }
}

namespace {

Coord draw_point(const Rect& r, RngStream& rng) {
  return {rng.uniform(r.x0, r.x1), rng.uniform(r.y0, r.y1)};
}

int median_qualification(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (acc >= total * 0.5) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(weights.size());
}

}  // namespace

World generate_world(const WorldSpec& spec, const SimConfig& config) {
  spec.validate();
  config.validate();

  World world;
  world.seed = config.seed;
  world.municipalities = spec.municipalities;
  world.vitals = build_vital_tables(spec);

  const double firm_cash =
      config.initial_firm_cash >= 0.0
          ? config.initial_firm_cash
          : 12.0 * config.wage_base * median_qualification(spec.qualification_weights);

  std::vector<double> initial_qli;
  for (const auto& m : spec.municipalities) initial_qli.push_back(m.initial_qli);
  world.government.init(initial_qli, config.government_mode, config.qli_gain);

  for (std::size_t m = 0; m < spec.municipalities.size(); ++m) {
    const Municipality& muni = spec.municipalities[m];
    const int citizen_count = static_cast<int>(
        std::llround(static_cast<double>(muni.target_population) * config.sample_fraction));
    const std::uint32_t first_family = static_cast<std::uint32_t>(world.families.size());
    generate_population(spec, static_cast<int>(m), citizen_count, config.seed, world);
    const std::uint32_t family_count =
        static_cast<std::uint32_t>(world.families.size()) - first_family;

    // one occupied house per family, plus vacant stock to hit the vacancy share
    const std::int64_t house_count = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(family_count) / (1.0 - config.vacancy)));
    RngStream hrng(config.seed, 0, Phase::gen_houses, m);
    for (std::int64_t h = 0; h < house_count; ++h) {
      House house;
      house.id = static_cast<std::uint32_t>(world.houses.size());
      house.municipality = static_cast<std::uint16_t>(m);
      const bool urban = hrng.bernoulli(muni.urban_fraction);
      house.coord = draw_point(urban ? muni.urban_zone : muni.region, hrng);
      house.size = hrng.uniform(spec.house_size_min, spec.house_size_max);
      house.quality = hrng.uniform(spec.house_quality_min, spec.house_quality_max);
      if (h < static_cast<std::int64_t>(family_count)) {
        const std::uint32_t fid = first_family + static_cast<std::uint32_t>(h);
        house.owner = static_cast<std::int32_t>(fid);
        house.occupant = static_cast<std::int32_t>(fid);
        world.families[fid].residence = static_cast<std::int32_t>(house.id);
        world.families[fid].owned_houses.push_back(house.id);
      } else {
        const std::uint32_t fid =
            first_family + static_cast<std::uint32_t>(hrng.uniform_below(family_count));
        house.owner = static_cast<std::int32_t>(fid);
        world.families[fid].owned_houses.push_back(house.id);
      }
      world.houses.push_back(house);
    }

    // firms follow the same urban/rural proportions as the population
    const std::int64_t firm_count = std::max<std::int64_t>(
        1, std::llround(static_cast<double>(muni.target_firms) * config.sample_fraction));
    RngStream frng(config.seed, 0, Phase::gen_firms, m);
    for (std::int64_t i = 0; i < firm_count; ++i) {
      Firm firm;
      firm.id = static_cast<std::uint32_t>(world.firms.size());
      firm.municipality = static_cast<std::uint16_t>(m);
      const bool urban = frng.bernoulli(muni.urban_fraction);
      firm.coord = draw_point(urban ? muni.urban_zone : muni.region, frng);
      firm.cash = firm_cash;
      firm.price = config.initial_price;
      world.firms.push_back(firm);
    }
  }

  world.flows.reset(world.municipality_count());
  world.rebuild_alive_family_ids();
  return world;
}

}  // namespace metro
