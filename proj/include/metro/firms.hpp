#pragma once

#include <cstdint>
#include <vector>

#include "metro/demography.hpp"
#include "metro/geo.hpp"

namespace metro {

struct Firm {
  std::uint32_t id = 0;
  Coord coord;
  std::uint16_t municipality = 0;
  double cash = 0.0;
  double stock = 0.0;
  double price = 1.0;
  double revenue_quarter = 0.0;
  double costs_quarter = 0.0;
  std::uint32_t qualification_sum = 0;  // cached sum over employees
  std::vector<std::uint32_t> employees;
};

struct PriceBand {
  double markup_step = 0.05;
  double low_months = 1.0;   // stock below this many months of output raises price
  double high_months = 3.0;  // stock above this many months lowers it
  double price_floor = 0.01;
};

// One business day of output: alpha * sum of employee qualifications.
double produce(Firm& firm, double alpha);

double monthly_payroll(const Firm& firm, double wage_base);
double cash_reserve(const Firm& firm, double wage_base, int reserve_months);

// Wage = wage_base * qualification, paid from cash. Short cash pays the most
// qualified first (ties: lower citizen id); unpaid wages are not owed.
double pay_wages(Firm& firm, std::vector<Citizen>& citizens, double wage_base);

// Stock-band price adjustment with thresholds scaled to the firm's own monthly
// output capacity.
void update_price(Firm& firm, double alpha, int business_days, const PriceBand& band);

// Quarter end: with positive quarterly profit and cash above the reserve, the
// surplus is split over employees in proportion to qualification. Quarterly
// accumulators reset either way. Returns the total paid out.
double distribute_profits(Firm& firm, std::vector<Citizen>& citizens, double wage_base,
                          int reserve_months);

// Sort key for the labor market: mean employee qualification, or the supplied
// population median when the firm has no staff.
double paying_wage(const Firm& firm, double wage_base, int population_median_qualification);

}  // namespace metro
