#pragma once

#include <cstdint>
#include <string>

#include "metro/government.hpp"

namespace metro {

// Every tunable knob of a run. Defaults are the baseline parameterization:
// alpha 0.3, beta 0.94, tax 0.25, housing entry 0.004, vacancy 0.09.
struct SimConfig {
  double alpha = 0.3;                    // output per qualification unit per business day
  double beta = 0.94;                    // propensity to consume
  double tax_rate = 0.25;                // consumption tax, collected at the firm's municipality
  double housing_entry_fraction = 0.004; // share of families sampled into the housing market
  double vacancy = 0.09;                 // vacant share of houses at generation
  int market_sample_size = 10;           // firms sampled per purchase decision
  double distance_share = 0.5;           // probability a hire is matched by proximity
  int reserve_months = 3;                // cash reserve = this many months of payroll
  double markup_step = 0.05;             // banded price adjustment step
  double wage_base = 10.0;               // wage per qualification unit per month
  double qli_gain = 1e-4;                // QLI increment per unit of per-capita tax
  int months = 240;
  int business_days = 21;
  std::uint64_t seed = 1;
  GovernmentMode government_mode = GovernmentMode::individual;
  double sample_fraction = 0.1;          // share of target population instantiated

  int openings_per_month = 1;            // positions each offering firm posts
  double treasury_retention = 0.02;      // share of collections parked in the treasury
  double price_floor = 0.01;
  double initial_price = 2.0;
  double initial_firm_cash = -1.0;       // < 0: derive as 12 * wage_base * median qualification
  double price_band_low_months = 1.0;
  double price_band_high_months = 3.0;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Parses "individual" / "unified".
GovernmentMode parse_government_mode(const std::string& text);
std::string to_string(GovernmentMode mode);

}  // namespace metro
