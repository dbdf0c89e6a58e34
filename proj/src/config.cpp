#include "metro/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metro/errors.hpp"

namespace metro {

namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& where, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& where, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

Rect get_rect(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 4 || !v[0].is_number()) {
    throw ConfigError(where + "." + key + ": expected [x0, y0, x1, y1]");
  }
  return Rect{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

WorldSpec parse_world(const json& w) {
  WorldSpec spec;
  if (!w.contains("municipalities") || !w.at("municipalities").is_array()) {
    throw ConfigError("world.municipalities: missing or not a list");
  }
  for (const auto& mj : w.at("municipalities")) {
    Municipality m;
    m.id = get_int(mj, "municipality", "id", static_cast<int>(spec.municipalities.size()) + 1);
    m.name = mj.value("name", "municipality-" + std::to_string(m.id));
    m.region = get_rect(mj, "municipality '" + m.name + "'", "region");
    m.urban_zone = mj.contains("urban_zone")
                       ? get_rect(mj, "municipality '" + m.name + "'", "urban_zone")
                       : m.region;
    m.initial_qli = get_number(mj, "municipality '" + m.name + "'", "initial_qli", 0.0);
    m.target_population = static_cast<std::int64_t>(
        get_number(mj, "municipality '" + m.name + "'", "target_population", 0.0));
    m.target_firms = static_cast<std::int64_t>(
        get_number(mj, "municipality '" + m.name + "'", "target_firms", 0.0));
    m.urban_fraction = get_number(mj, "municipality '" + m.name + "'", "urban_fraction", 1.0);
    spec.municipalities.push_back(std::move(m));
  }

  if (w.contains("age_pyramid")) {
    for (const auto& bj : w.at("age_pyramid")) {
      AgeBand band;
      band.min_years = get_int(bj, "age_pyramid", "min_years", 0);
      band.max_years = get_int(bj, "age_pyramid", "max_years", band.min_years);
      band.female = get_number(bj, "age_pyramid", "female", 0.0);
      band.male = get_number(bj, "age_pyramid", "male", 0.0);
      spec.age_pyramid.push_back(band);
    }
  }
  if (w.contains("mortality")) {
    for (const auto& rj : w.at("mortality")) {
      MortalityRow row;
      row.age_years = get_int(rj, "mortality", "age_years", 0);
      row.female = get_number(rj, "mortality", "female", 0.0);
      row.male = get_number(rj, "mortality", "male", 0.0);
      spec.mortality_table.push_back(row);
    }
  }
  if (w.contains("fertility")) {
    for (const auto& rj : w.at("fertility")) {
      FertilityRow row;
      row.age_years = get_int(rj, "fertility", "age_years", 0);
      row.rate = get_number(rj, "fertility", "rate", 0.0);
      spec.fertility_table.push_back(row);
    }
  }
  if (w.contains("qualification_weights")) {
    for (const auto& v : w.at("qualification_weights")) {
      if (!v.is_number()) throw ConfigError("world.qualification_weights: expected numbers");
      spec.qualification_weights.push_back(v.get<double>());
    }
  }
  if (w.contains("house_size_range")) {
    const auto& r = w.at("house_size_range");
    if (!r.is_array() || r.size() != 2) throw ConfigError("world.house_size_range: expected [min, max]");
    spec.house_size_min = r[0].get<double>();
    spec.house_size_max = r[1].get<double>();
  }
  if (w.contains("house_quality_range")) {
    const auto& r = w.at("house_quality_range");
    if (!r.is_array() || r.size() != 2) {
      throw ConfigError("world.house_quality_range: expected [min, max]");
    }
    spec.house_quality_min = r[0].get<double>();
    spec.house_quality_max = r[1].get<double>();
  }
  spec.sample_fraction = get_number(w, "world", "sample_fraction", spec.sample_fraction);
  spec.mean_family_size = get_number(w, "world", "mean_family_size", spec.mean_family_size);
  spec.family_qualification_mixing = get_number(w, "world", "family_qualification_mixing",
                                                spec.family_qualification_mixing);
  spec.initial_savings_per_qualification = get_number(
      w, "world", "initial_savings_per_qualification", spec.initial_savings_per_qualification);
  if (w.contains("fertile_age_range_years")) {
    const auto& r = w.at("fertile_age_range_years");
    if (!r.is_array() || r.size() != 2) {
      throw ConfigError("world.fertile_age_range_years: expected [min, max]");
    }
    spec.fertile_age_min_years = r[0].get<int>();
    spec.fertile_age_max_years = r[1].get<int>();
  }
  return spec;
}

SimConfig parse_sim(const json& s, const WorldSpec& world) {
  SimConfig c;
  c.sample_fraction = world.sample_fraction;  // world file default; key below overrides
  c.alpha = get_number(s, "simulation", "alpha", c.alpha);
  c.beta = get_number(s, "simulation", "beta", c.beta);
  c.tax_rate = get_number(s, "simulation", "tax_rate", c.tax_rate);
  c.housing_entry_fraction =
      get_number(s, "simulation", "housing_entry_fraction", c.housing_entry_fraction);
  c.vacancy = get_number(s, "simulation", "vacancy", c.vacancy);
  c.market_sample_size = get_int(s, "simulation", "market_sample_size", c.market_sample_size);
  c.distance_share = get_number(s, "simulation", "distance_share", c.distance_share);
  c.reserve_months = get_int(s, "simulation", "reserve_months", c.reserve_months);
  c.markup_step = get_number(s, "simulation", "markup_step", c.markup_step);
  c.wage_base = get_number(s, "simulation", "wage_base", c.wage_base);
  c.qli_gain = get_number(s, "simulation", "qli_gain", c.qli_gain);
  c.months = get_int(s, "simulation", "months", c.months);
  c.business_days = get_int(s, "simulation", "business_days", c.business_days);
  if (s.contains("seed")) {
    if (!s.at("seed").is_number_unsigned() && !s.at("seed").is_number_integer()) {
      throw ConfigError("simulation.seed: expected an integer");
    }
    c.seed = s.at("seed").get<std::uint64_t>();
  }
  if (s.contains("government_mode")) {
    if (!s.at("government_mode").is_string()) {
      throw ConfigError("simulation.government_mode: expected a string");
    }
    c.government_mode = parse_government_mode(s.at("government_mode").get<std::string>());
  }
  c.sample_fraction = get_number(s, "simulation", "sample_fraction", c.sample_fraction);
  c.openings_per_month = get_int(s, "simulation", "openings_per_month", c.openings_per_month);
  c.treasury_retention = get_number(s, "simulation", "treasury_retention", c.treasury_retention);
  c.price_floor = get_number(s, "simulation", "price_floor", c.price_floor);
  c.initial_price = get_number(s, "simulation", "initial_price", c.initial_price);
  c.initial_firm_cash = get_number(s, "simulation", "initial_firm_cash", c.initial_firm_cash);
  c.price_band_low_months =
      get_number(s, "simulation", "price_band_low_months", c.price_band_low_months);
  c.price_band_high_months =
      get_number(s, "simulation", "price_band_high_months", c.price_band_high_months);
  return c;
}

}  // namespace

LoadedConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": not valid JSON: " + e.what());
  }
  if (!root.is_object() || !root.contains("world")) {
    throw ConfigError(origin + ": expected an object with a 'world' section");
  }

  LoadedConfig out;
  out.world = parse_world(root.at("world"));
  out.sim = parse_sim(root.contains("simulation") ? root.at("simulation") : json::object(),
                      out.world);
  out.world.validate();
  out.sim.validate();
  return out;
}

LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

std::string config_to_json(const LoadedConfig& config) {
  json sim{
      {"alpha", config.sim.alpha},
      {"beta", config.sim.beta},
      {"tax_rate", config.sim.tax_rate},
      {"housing_entry_fraction", config.sim.housing_entry_fraction},
      {"vacancy", config.sim.vacancy},
      {"market_sample_size", config.sim.market_sample_size},
      {"distance_share", config.sim.distance_share},
      {"reserve_months", config.sim.reserve_months},
      {"markup_step", config.sim.markup_step},
      {"wage_base", config.sim.wage_base},
      {"qli_gain", config.sim.qli_gain},
      {"months", config.sim.months},
      {"business_days", config.sim.business_days},
      {"seed", config.sim.seed},
      {"government_mode", to_string(config.sim.government_mode)},
      {"sample_fraction", config.sim.sample_fraction},
      {"openings_per_month", config.sim.openings_per_month},
      {"treasury_retention", config.sim.treasury_retention},
      {"price_floor", config.sim.price_floor},
      {"initial_price", config.sim.initial_price},
      {"initial_firm_cash", config.sim.initial_firm_cash},
      {"price_band_low_months", config.sim.price_band_low_months},
      {"price_band_high_months", config.sim.price_band_high_months},
  };

  json munis = json::array();
  for (const auto& m : config.world.municipalities) {
    munis.push_back({
        {"id", m.id},
        {"name", m.name},
        {"region", {m.region.x0, m.region.y0, m.region.x1, m.region.y1}},
        {"urban_zone", {m.urban_zone.x0, m.urban_zone.y0, m.urban_zone.x1, m.urban_zone.y1}},
        {"initial_qli", m.initial_qli},
        {"target_population", m.target_population},
        {"target_firms", m.target_firms},
        {"urban_fraction", m.urban_fraction},
    });
  }
  json pyramid = json::array();
  for (const auto& b : config.world.age_pyramid) {
    pyramid.push_back({{"min_years", b.min_years},
                       {"max_years", b.max_years},
                       {"female", b.female},
                       {"male", b.male}});
  }
  json mortality = json::array();
  for (const auto& r : config.world.mortality_table) {
    mortality.push_back({{"age_years", r.age_years}, {"female", r.female}, {"male", r.male}});
  }
  json fertility = json::array();
  for (const auto& r : config.world.fertility_table) {
    fertility.push_back({{"age_years", r.age_years}, {"rate", r.rate}});
  }

  json world{
      {"municipalities", munis},
      {"age_pyramid", pyramid},
      {"mortality", mortality},
      {"fertility", fertility},
      {"qualification_weights", config.world.qualification_weights},
      {"house_size_range", {config.world.house_size_min, config.world.house_size_max}},
      {"house_quality_range", {config.world.house_quality_min, config.world.house_quality_max}},
      {"sample_fraction", config.world.sample_fraction},
      {"mean_family_size", config.world.mean_family_size},
      {"family_qualification_mixing", config.world.family_qualification_mixing},
      {"initial_savings_per_qualification", config.world.initial_savings_per_qualification},
      {"fertile_age_range_years",
       {config.world.fertile_age_min_years, config.world.fertile_age_max_years}},
  };

  json root{{"simulation", sim}, {"world", world}};
  return root.dump(2) + "\n";
}

}  // namespace metro
