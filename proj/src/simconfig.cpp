#include "metro/simconfig.hpp"

#include <cmath>

#include "metro/errors.hpp"

namespace metro {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void SimConfig::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0, "alpha: must be > 0");
  require(beta >= 0.0 && beta <= 1.0, "beta: outside [0, 1]");
  require(tax_rate >= 0.0 && tax_rate < 1.0, "tax_rate: outside [0, 1)");
  require(housing_entry_fraction >= 0.0 && housing_entry_fraction <= 1.0,
          "housing_entry_fraction: outside [0, 1]");
  require(vacancy >= 0.0 && vacancy < 1.0, "vacancy: outside [0, 1)");
  require(market_sample_size >= 1, "market_sample_size: must be >= 1");
  require(distance_share >= 0.0 && distance_share <= 1.0, "distance_share: outside [0, 1]");
  require(reserve_months >= 0, "reserve_months: must be >= 0");
  require(markup_step >= 0.0 && std::isfinite(markup_step), "markup_step: must be >= 0");
  require(wage_base > 0.0 && std::isfinite(wage_base), "wage_base: must be > 0");
  require(qli_gain >= 0.0 && std::isfinite(qli_gain), "qli_gain: must be >= 0");
  require(months >= 1, "months: must be >= 1");
  require(business_days >= 1, "business_days: must be >= 1");
  require(sample_fraction > 0.0 && sample_fraction <= 1.0, "sample_fraction: outside (0, 1]");
  require(openings_per_month >= 0, "openings_per_month: must be >= 0");
  require(treasury_retention >= 0.0 && treasury_retention <= 1.0,
          "treasury_retention: outside [0, 1]");
  require(price_floor > 0.0, "price_floor: must be > 0");
  require(initial_price > 0.0, "initial_price: must be > 0");
  require(price_band_low_months >= 0.0, "price_band_low_months: must be >= 0");
  require(price_band_high_months >= price_band_low_months,
          "price_band_high_months: must be >= price_band_low_months");
}

GovernmentMode parse_government_mode(const std::string& text) {
  if (text == "individual") return GovernmentMode::individual;
  if (text == "unified") return GovernmentMode::unified;
  throw ConfigError("government_mode: expected 'individual' or 'unified', got '" + text + "'");
}

std::string to_string(GovernmentMode mode) {
  return mode == GovernmentMode::unified ? "unified" : "individual";
}

}  // namespace metro
