#include "metro/demography.hpp"

#include <algorithm>
#include <cmath>

#include "metro/errors.hpp"
#include "metro/world.hpp"

namespace metro {

namespace {

// Draws an index from a cumulative weight table.
std::size_t sample_cdf(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

std::vector<double> cumulative(const std::vector<double>& weights) {
  std::vector<double> cdf(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw ConfigError("weight table sums to zero");
  return cdf;
}

void erase_value(std::vector<std::uint32_t>& v, std::uint32_t value) {
  v.erase(std::remove(v.begin(), v.end(), value), v.end());
}

}  // namespace

void generate_population(const WorldSpec& spec, int municipality_index, int citizen_count,
                         std::uint64_t seed, World& world) {
  if (citizen_count <= 0) {
    throw ConfigError("municipality '" + spec.municipalities[municipality_index].name +
                      "': sampled population is zero; raise sample_fraction");
  }

  std::vector<double> female_cdf, male_cdf;
  {
    std::vector<double> f, m;
    f.reserve(spec.age_pyramid.size());
    m.reserve(spec.age_pyramid.size());
    for (const auto& band : spec.age_pyramid) {
      f.push_back(band.female);
      m.push_back(band.male);
    }
    female_cdf = cumulative(f);
    male_cdf = cumulative(m);
  }
  const std::vector<double> qual_cdf = cumulative(spec.qualification_weights);

  RngStream rng(seed, 0, Phase::gen_citizens, static_cast<std::uint64_t>(municipality_index));

  const std::uint32_t first_citizen = static_cast<std::uint32_t>(world.citizens.size());
  for (int i = 0; i < citizen_count; ++i) {
    Citizen c;
    c.id = static_cast<std::uint32_t>(world.citizens.size());
    c.gender = rng.bernoulli(0.5) ? Gender::male : Gender::female;
    const auto& cdf = c.gender == Gender::male ? male_cdf : female_cdf;
    const AgeBand& band = spec.age_pyramid[sample_cdf(cdf, rng.uniform01())];
    const int lo = band.min_years * 12;
    const int hi = band.max_years * 12 + 11;
    c.age_months = lo + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(hi - lo + 1)));
    c.qualification =
        static_cast<std::uint8_t>(1 + sample_cdf(qual_cdf, rng.uniform01()));
    world.citizens.push_back(c);
  }

  const int family_count = std::max(
      1, static_cast<int>(std::llround(static_cast<double>(citizen_count) / spec.mean_family_size)));
  const std::uint32_t first_family = static_cast<std::uint32_t>(world.families.size());
  for (int f = 0; f < family_count; ++f) {
    Family fam;
    fam.id = static_cast<std::uint32_t>(world.families.size());
    fam.municipality = static_cast<std::uint16_t>(municipality_index);
    world.families.push_back(fam);
  }

  // each family opens with one member; everyone else lands uniformly
  RngStream assign(seed, 0, Phase::gen_families, static_cast<std::uint64_t>(municipality_index));
  for (int i = 0; i < citizen_count; ++i) {
    const std::uint32_t cid = first_citizen + static_cast<std::uint32_t>(i);
    const std::uint32_t fid =
        i < family_count
            ? first_family + static_cast<std::uint32_t>(i)
            : first_family + static_cast<std::uint32_t>(
                                 assign.uniform_below(static_cast<std::uint64_t>(family_count)));
    world.citizens[cid].family = fid;
    world.families[fid].members.push_back(cid);
  }

  for (std::uint32_t f = first_family; f < first_family + static_cast<std::uint32_t>(family_count);
       ++f) {
    Family& fam = world.families[f];
    double qual_total = 0.0;
    for (std::uint32_t cid : fam.members) qual_total += world.citizens[cid].qualification;
    fam.savings = spec.initial_savings_per_qualification * qual_total;
  }
}

DemographicEvents step_demographics(World& world, std::uint32_t month, std::uint64_t seed) {
  DemographicEvents events;

  struct Birth {
    std::uint32_t family;
    Gender gender;
  };
  std::vector<Birth> births;
  std::vector<std::uint32_t> emptied_families;

  for (Citizen& c : world.citizens) {
    if (!c.alive) continue;
    c.age_months += 1;

    RngStream rng(seed, month, Phase::demographics, c.id);
    const double death_p = world.vitals.mortality(c.age_months, c.gender == Gender::male);
    if (death_p > 0.0 && rng.bernoulli(death_p)) {
      events.deaths += 1;
      c.alive = false;
      if (c.employer >= 0) {
        Firm& firm = world.firms[static_cast<std::size_t>(c.employer)];
        erase_value(firm.employees, c.id);
        firm.qualification_sum -= c.qualification;
        c.employer = -1;
      }
      Family& fam = world.families[c.family];
      fam.savings += c.money;
      c.money = 0.0;
      erase_value(fam.members, c.id);
      if (fam.members.empty()) emptied_families.push_back(fam.id);
      continue;
    }

    if (c.gender == Gender::female) {
      const double birth_p = world.vitals.fertility_at(c.age_months);
      if (birth_p > 0.0 && rng.bernoulli(birth_p)) {
        births.push_back({c.family, rng.bernoulli(0.5) ? Gender::male : Gender::female});
      }
    }
  }

  for (const Birth& b : births) {
    Citizen child;
    child.id = static_cast<std::uint32_t>(world.citizens.size());
    child.family = b.family;
    child.age_months = 0;
    child.qualification = 1;
    child.gender = b.gender;
    world.citizens.push_back(child);
    world.families[b.family].members.push_back(child.id);
    events.births += 1;
  }

  if (!emptied_families.empty()) {
    // heirs drawn from the survivors of the same municipality (any survivor
    // as fallback), so estates transfer instead of vanishing
    std::vector<std::vector<std::uint32_t>> by_muni(world.municipality_count());
    std::vector<std::uint32_t> all_alive;
    for (const Family& fam : world.families) {
      if (!fam.alive || fam.members.empty()) continue;
      by_muni[fam.municipality].push_back(fam.id);
      all_alive.push_back(fam.id);
    }
    for (std::uint32_t fid : emptied_families) {
      Family& fam = world.families[fid];
      fam.alive = false;
      events.families_dissolved += 1;
      for (std::uint32_t hid : fam.owned_houses) {
        House& house = world.houses[hid];
        house.owner = -1;
        if (house.occupant == static_cast<std::int32_t>(fid)) house.occupant = -1;
      }
      fam.owned_houses.clear();
      fam.residence = -1;
      if (fam.savings > 0.0) {
        const auto& local = by_muni[fam.municipality];
        const auto& pool = local.empty() ? all_alive : local;
        if (pool.empty()) {
          world.flows.estates_unclaimed += fam.savings;
          world.estates_unclaimed_total += fam.savings;
        } else {
          RngStream rng(seed, month, Phase::inheritance, fid);
          Family& heir = world.families[pool[rng.uniform_below(pool.size())]];
          heir.savings += fam.savings;
        }
        fam.savings = 0.0;
      }
    }
  }

  world.flows.births += events.births;
  world.flows.deaths += events.deaths;
  return events;
}

}  // namespace metro
