#pragma once

#include <cstdint>
#include <vector>

#include "metro/geo.hpp"

namespace metro {

constexpr int kQualificationLevels = 21;  // levels 1..21

// Population share per age band; `female`/`male` columns each sum to 1.
struct AgeBand {
  int min_years = 0;
  int max_years = 0;  // inclusive
  double female = 0.0;
  double male = 0.0;
};

// Monthly death probability at a given age in years.
struct MortalityRow {
  int age_years = 0;
  double female = 0.0;
  double male = 0.0;
};

// Monthly birth probability for a female of a given age in years.
struct FertilityRow {
  int age_years = 0;
  double rate = 0.0;
};

struct WorldSpec {
  std::vector<Municipality> municipalities;
  std::vector<AgeBand> age_pyramid;
  std::vector<MortalityRow> mortality_table;
  std::vector<FertilityRow> fertility_table;
  std::vector<double> qualification_weights;  // one weight per level 1..21
  double house_size_min = 30.0;
  double house_size_max = 120.0;
  double house_quality_min = 0.5;
  double house_quality_max = 2.0;
  double sample_fraction = 0.1;  // default; SimConfig may override
  double mean_family_size = 3.0;
  // probability a member shares the family's base qualification level rather
  // than drawing fresh; the marginal distribution is unchanged
  double family_qualification_mixing = 0.8;
  double initial_savings_per_qualification = 10.0;
  int fertile_age_min_years = 15;
  int fertile_age_max_years = 49;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Dense per-age-year lookup built from the spec tables; ages outside the
// table domain resolve to probability 0.
struct VitalTables {
  std::vector<double> mortality_female;  // index = age in years
  std::vector<double> mortality_male;
  std::vector<double> fertility;
  int fertile_min_months = 0;
  int fertile_max_months = 0;  // inclusive

  double mortality(int age_months, bool male) const {
    const auto& t = male ? mortality_male : mortality_female;
    const std::size_t y = static_cast<std::size_t>(age_months) / 12;
    return y < t.size() ? t[y] : 0.0;
  }
  double fertility_at(int age_months) const {
    if (age_months < fertile_min_months || age_months > fertile_max_months) return 0.0;
    const std::size_t y = static_cast<std::size_t>(age_months) / 12;
    return y < fertility.size() ? fertility[y] : 0.0;
  }
};

VitalTables build_vital_tables(const WorldSpec& spec);

}  // namespace metro
