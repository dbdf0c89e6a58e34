#pragma once

// Shared fixtures for the test suites: compact world specs and a builder for
// hand-assembled worlds.

#include <cstdint>
#include <string>
#include <vector>

#include "metro/world.hpp"

namespace metro::testing {

// Single-band pyramid (ages 30-39), no deaths, no births, flat qualifications.
inline WorldSpec tiny_spec(int municipality_count = 1, std::int64_t population_each = 300,
                           std::int64_t firms_each = 2) {
  WorldSpec spec;
  for (int m = 0; m < municipality_count; ++m) {
    Municipality muni;
    muni.id = m + 1;
    muni.name = "muni-" + std::to_string(m + 1);
    const double x = 100.0 * m;
    muni.region = {x, 0.0, x + 100.0, 100.0};
    muni.urban_zone = {x + 20.0, 20.0, x + 60.0, 60.0};
    muni.initial_qli = 0.5 + 0.05 * m;
    muni.target_population = population_each;
    muni.target_firms = firms_each;
    muni.urban_fraction = 0.8;
    spec.municipalities.push_back(muni);
  }
  spec.age_pyramid = {{30, 39, 1.0, 1.0}};
  spec.qualification_weights.assign(kQualificationLevels, 0.0);
  spec.qualification_weights[0] = 1.0;  // everyone at level 1
  spec.sample_fraction = 1.0;
  spec.mean_family_size = 3.0;
  spec.initial_savings_per_qualification = 10.0;
  return spec;
}

inline SimConfig tiny_config() {
  SimConfig config;
  config.sample_fraction = 1.0;
  config.months = 12;
  config.seed = 7;
  return config;
}

// Hand-built worlds for operation-level tests.
class WorldBuilder {
 public:
  explicit WorldBuilder(int municipality_count = 1, double qli = 1.0, double qli_gain = 1.0,
                        GovernmentMode mode = GovernmentMode::individual) {
    std::vector<double> initial;
    for (int m = 0; m < municipality_count; ++m) {
      Municipality muni;
      muni.id = m + 1;
      muni.name = "m" + std::to_string(m + 1);
      const double x = 100.0 * m;
      muni.region = {x, 0.0, x + 100.0, 100.0};
      muni.urban_zone = muni.region;
      muni.initial_qli = qli;
      muni.target_population = 1;
      muni.target_firms = 1;
      world_.municipalities.push_back(muni);
      initial.push_back(qli);
    }
    world_.government.init(initial, mode, qli_gain);
    world_.seed = 1;
  }

  std::uint32_t add_house(std::uint16_t muni, Coord at, double size, double quality,
                          std::int32_t owner = -1, std::int32_t occupant = -1) {
    House h;
    h.id = static_cast<std::uint32_t>(world_.houses.size());
    h.municipality = muni;
    h.coord = at;
    h.size = size;
    h.quality = quality;
    h.owner = owner;
    h.occupant = occupant;
    world_.houses.push_back(h);
    if (owner >= 0) world_.families[static_cast<std::uint32_t>(owner)].owned_houses.push_back(h.id);
    return h.id;
  }

  // family living in a fresh owned house at `at`
  std::uint32_t add_family(std::uint16_t muni, double savings, Coord at = {50.0, 50.0},
                           double house_size = 50.0, double house_quality = 1.0) {
    Family f;
    f.id = static_cast<std::uint32_t>(world_.families.size());
    f.municipality = muni;
    f.savings = savings;
    world_.families.push_back(f);
    const std::uint32_t hid = add_house(muni, at, house_size, house_quality,
                                        static_cast<std::int32_t>(f.id),
                                        static_cast<std::int32_t>(f.id));
    world_.families[f.id].residence = static_cast<std::int32_t>(hid);
    return f.id;
  }

  std::uint32_t add_citizen(std::uint32_t family, int age_years, int qualification,
                            Gender gender = Gender::female, double money = 0.0) {
    Citizen c;
    c.id = static_cast<std::uint32_t>(world_.citizens.size());
    c.family = family;
    c.age_months = age_years * 12;
    c.qualification = static_cast<std::uint8_t>(qualification);
    c.gender = gender;
    c.money = money;
    world_.citizens.push_back(c);
    world_.families[family].members.push_back(c.id);
    return c.id;
  }

  std::uint32_t add_firm(std::uint16_t muni, Coord at, double cash = 0.0, double stock = 0.0,
                         double price = 1.0) {
    Firm f;
    f.id = static_cast<std::uint32_t>(world_.firms.size());
    f.municipality = muni;
    f.coord = at;
    f.cash = cash;
    f.stock = stock;
    f.price = price;
    world_.firms.push_back(f);
    return f.id;
  }

  void employ(std::uint32_t citizen, std::uint32_t firm) {
    world_.citizens[citizen].employer = static_cast<std::int32_t>(firm);
    world_.firms[firm].employees.push_back(citizen);
    world_.firms[firm].qualification_sum += world_.citizens[citizen].qualification;
  }

  World build() {
    world_.flows.reset(world_.municipality_count());
    world_.rebuild_alive_family_ids();
    return world_;
  }

 private:
  World world_;
};

}  // namespace metro::testing
