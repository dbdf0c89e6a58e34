#include "metro/firms.hpp"

#include <algorithm>

namespace metro {

double produce(Firm& firm, double alpha) {
  const double made = alpha * static_cast<double>(firm.qualification_sum);
  firm.stock += made;
  return made;
}

double monthly_payroll(const Firm& firm, double wage_base) {
  return wage_base * static_cast<double>(firm.qualification_sum);
}

double cash_reserve(const Firm& firm, double wage_base, int reserve_months) {
  return static_cast<double>(reserve_months) * monthly_payroll(firm, wage_base);
}

double pay_wages(Firm& firm, std::vector<Citizen>& citizens, double wage_base) {
  if (firm.employees.empty()) return 0.0;

  double paid = 0.0;
  if (firm.cash >= monthly_payroll(firm, wage_base)) {
    for (std::uint32_t id : firm.employees) {
      Citizen& worker = citizens[id];
      const double wage = wage_base * static_cast<double>(worker.qualification);
      firm.cash -= wage;
      worker.money += wage;
      paid += wage;
    }
  } else {
    // short month: highest qualification first, ties to the lower id
    std::vector<std::uint32_t> order(firm.employees);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (citizens[a].qualification != citizens[b].qualification)
        return citizens[a].qualification > citizens[b].qualification;
      return a < b;
    });
    for (std::uint32_t id : order) {
      Citizen& worker = citizens[id];
      const double wage = wage_base * static_cast<double>(worker.qualification);
      if (firm.cash < wage) continue;
      firm.cash -= wage;
      worker.money += wage;
      paid += wage;
    }
  }
  firm.costs_quarter += paid;
  return paid;
}

void update_price(Firm& firm, double alpha, int business_days, const PriceBand& band) {
  const double monthly_output =
      alpha * static_cast<double>(firm.qualification_sum) * static_cast<double>(business_days);
  const double low = band.low_months * monthly_output;
  const double high = band.high_months * monthly_output;
  if (firm.stock < low) {
    firm.price *= 1.0 + band.markup_step;
  } else if (firm.stock > high) {
    firm.price *= 1.0 - band.markup_step;
  }
  firm.price = std::max(firm.price, band.price_floor);
}

double distribute_profits(Firm& firm, std::vector<Citizen>& citizens, double wage_base,
                          int reserve_months) {
  const double profit = firm.revenue_quarter - firm.costs_quarter;
  firm.revenue_quarter = 0.0;
  firm.costs_quarter = 0.0;

  if (profit <= 0.0 || firm.employees.empty()) return 0.0;
  const double reserve = cash_reserve(firm, wage_base, reserve_months);
  if (firm.cash <= reserve) return 0.0;

  const double surplus = firm.cash - reserve;
  const double weight_sum = static_cast<double>(firm.qualification_sum);
  double paid = 0.0;
  for (std::uint32_t id : firm.employees) {
    Citizen& worker = citizens[id];
    const double share = surplus * static_cast<double>(worker.qualification) / weight_sum;
    firm.cash -= share;
    worker.money += share;
    paid += share;
  }
  return paid;
}

double paying_wage(const Firm& firm, double wage_base, int population_median_qualification) {
  if (firm.employees.empty()) {
    return wage_base * static_cast<double>(population_median_qualification);
  }
  return wage_base * static_cast<double>(firm.qualification_sum) /
         static_cast<double>(firm.employees.size());
}

}  // namespace metro
