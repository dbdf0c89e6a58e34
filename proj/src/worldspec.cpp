#include "metro/worldspec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "metro/errors.hpp"

namespace metro {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void WorldSpec::validate() const {
  require(!municipalities.empty(), "municipalities: list is empty");

  for (const auto& m : municipalities) {
    const std::string tag = "municipality '" + m.name + "': ";
    require(m.region.valid(), tag + "region has min > max");
    require(m.urban_zone.valid(), tag + "urban_zone has min > max");
    require(m.region.contains(m.urban_zone), tag + "urban_zone not contained in region");
    require(m.initial_qli > 0.0 && m.initial_qli <= 1.0, tag + "initial_qli outside (0, 1]");
    require(m.urban_fraction >= 0.0 && m.urban_fraction <= 1.0,
            tag + "urban_fraction outside [0, 1]");
    require(m.target_population > 0, tag + "target_population must be positive");
    require(m.target_firms >= 0, tag + "target_firms must be non-negative");
  }
  for (std::size_t i = 0; i < municipalities.size(); ++i) {
    for (std::size_t j = i + 1; j < municipalities.size(); ++j) {
      require(!municipalities[i].region.overlaps(municipalities[j].region),
              "municipalities '" + municipalities[i].name + "' and '" +
                  municipalities[j].name + "': regions overlap");
    }
  }

  require(!age_pyramid.empty(), "age_pyramid: table is empty");
  double female_sum = 0.0, male_sum = 0.0;
  for (const auto& band : age_pyramid) {
    require(band.min_years >= 0 && band.min_years <= band.max_years,
            "age_pyramid: invalid band bounds");
    require(probability(band.female) && probability(band.male),
            "age_pyramid: proportions outside [0, 1]");
    female_sum += band.female;
    male_sum += band.male;
  }
  require(std::abs(female_sum - 1.0) <= 1e-9, "age_pyramid: female proportions do not sum to 1");
  require(std::abs(male_sum - 1.0) <= 1e-9, "age_pyramid: male proportions do not sum to 1");

  for (const auto& row : mortality_table) {
    require(row.age_years >= 0, "mortality_table: negative age");
    require(probability(row.female) && probability(row.male),
            "mortality_table: probability outside [0, 1]");
  }
  for (const auto& row : fertility_table) {
    require(row.age_years >= 0, "fertility_table: negative age");
    require(probability(row.rate), "fertility_table: probability outside [0, 1]");
  }

  require(qualification_weights.size() == kQualificationLevels,
          "qualification_weights: expected " + std::to_string(kQualificationLevels) +
              " entries, got " + std::to_string(qualification_weights.size()));
  double qual_sum = 0.0;
  for (double w : qualification_weights) {
    require(std::isfinite(w) && w >= 0.0, "qualification_weights: negative weight");
    qual_sum += w;
  }
  require(qual_sum > 0.0, "qualification_weights: weights sum to zero");

  require(house_size_min > 0.0 && house_size_min <= house_size_max,
          "house_size_range: need 0 < min <= max");
  require(house_quality_min > 0.0 && house_quality_min <= house_quality_max,
          "house_quality_range: need 0 < min <= max");
  require(sample_fraction > 0.0 && sample_fraction <= 1.0,
          "sample_fraction: outside (0, 1]");
  require(mean_family_size >= 1.0, "mean_family_size: must be >= 1");
  require(family_qualification_mixing >= 0.0 && family_qualification_mixing <= 1.0,
          "family_qualification_mixing: outside [0, 1]");
  require(initial_savings_per_qualification >= 0.0,
          "initial_savings_per_qualification: must be non-negative");
  require(fertile_age_min_years >= 0 && fertile_age_min_years <= fertile_age_max_years,
          "fertile_age_range: need 0 <= min <= max");
}

VitalTables build_vital_tables(const WorldSpec& spec) {
  VitalTables t;
  int max_age = 0;
  for (const auto& row : spec.mortality_table) max_age = std::max(max_age, row.age_years);
  for (const auto& row : spec.fertility_table) max_age = std::max(max_age, row.age_years);
  t.mortality_female.assign(static_cast<std::size_t>(max_age) + 1, 0.0);
  t.mortality_male.assign(static_cast<std::size_t>(max_age) + 1, 0.0);
  t.fertility.assign(static_cast<std::size_t>(max_age) + 1, 0.0);
  for (const auto& row : spec.mortality_table) {
    t.mortality_female[static_cast<std::size_t>(row.age_years)] = row.female;
    t.mortality_male[static_cast<std::size_t>(row.age_years)] = row.male;
  }
  for (const auto& row : spec.fertility_table) {
    t.fertility[static_cast<std::size_t>(row.age_years)] = row.rate;
  }
  t.fertile_min_months = spec.fertile_age_min_years * 12;
  t.fertile_max_months = spec.fertile_age_max_years * 12 + 11;
  return t;
}

}  // namespace metro
