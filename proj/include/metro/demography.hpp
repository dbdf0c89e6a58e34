#pragma once

#include <cstdint>
#include <vector>

#include "metro/rng.hpp"
#include "metro/worldspec.hpp"

namespace metro {

struct World;

constexpr int kLaborMinAgeMonths = 15 * 12;  // exclusive bound
constexpr int kLaborMaxAgeMonths = 70 * 12;  // exclusive bound

enum class Gender : std::uint8_t { female = 0, male = 1 };

struct Citizen {
  std::uint32_t id = 0;
  std::uint32_t family = 0;
  std::int32_t employer = -1;  // firm id, -1 = unemployed
  std::int32_t age_months = 0;
  double money = 0.0;
  std::uint8_t qualification = 1;  // 1..21
  Gender gender = Gender::female;
  bool alive = true;

  bool working_age() const {
    return age_months > kLaborMinAgeMonths && age_months < kLaborMaxAgeMonths;
  }
  bool adult() const { return age_months > kLaborMinAgeMonths; }
};

struct Family {
  std::uint32_t id = 0;
  std::int32_t residence = -1;  // house id
  std::uint16_t municipality = 0;
  bool alive = true;
  double savings = 0.0;
  std::vector<std::uint32_t> members;
  std::vector<std::uint32_t> owned_houses;
};

struct DemographicEvents {
  std::int64_t births = 0;
  std::int64_t deaths = 0;
  std::int64_t families_dissolved = 0;
};

// Appends citizens/families for one municipality, sampling ages, genders and
// qualifications from the spec tables. Families get round(n / mean_size)
// slots, each seeded with one member; the rest are assigned uniformly.
void generate_population(const WorldSpec& spec, int municipality_index, int citizen_count,
                         std::uint64_t seed, World& world);

// Monthly step: aging, deaths, births. Dead members leave family and employer,
// their cash folds into family savings; a family whose last member died is
// dissolved (houses to the municipal pool, savings inherited by a random
// family of the same municipality).
DemographicEvents step_demographics(World& world, std::uint32_t month, std::uint64_t seed);

}  // namespace metro
