#include <algorithm>

#include "metro/markets.hpp"
#include "metro/world.hpp"

namespace metro {

double decide_consumption(double pooled_cash, double beta, RngStream& rng) {
  if (pooled_cash <= 0.0 || beta <= 0.0) return 0.0;
  return pooled_cash * beta * rng.uniform01_closed();
}

std::int32_t choose_firm(const World& world, const Family& family, int market_size,
                         RngStream& rng) {
  const std::size_t n = world.firms.size();
  if (n == 0) return -1;

  const bool by_distance = rng.bernoulli(0.5);
  const Coord home = world.houses[static_cast<std::size_t>(family.residence)].coord;

  std::int32_t best = -1;
  double best_key = 0.0;
  for (int i = 0; i < market_size; ++i) {
    const Firm& firm = world.firms[rng.uniform_below(n)];
    const double key = by_distance ? squared_distance(home, firm.coord) : firm.price;
    if (best < 0 || key < best_key ||
        (key == best_key && firm.id < static_cast<std::uint32_t>(best))) {
      best = static_cast<std::int32_t>(firm.id);
      best_key = key;
    }
  }
  return best;
}

GoodsPurchase execute_purchase(World& world, Family& family, Firm& firm, double spend,
                               double tax_rate) {
  GoodsPurchase purchase;
  purchase.family_id = family.id;
  purchase.firm_id = firm.id;
  if (spend <= 0.0 || firm.stock <= 0.0 || firm.price <= 0.0) return purchase;

  double units, gross;
  if (spend < firm.stock * firm.price) {
    gross = spend;
    units = spend / firm.price;
    firm.stock -= units;
  } else {
    units = firm.stock;
    gross = units * firm.price;
    firm.stock = 0.0;
  }

  // family pays exactly what firm and government receive
  const double tax = gross * tax_rate;
  const double net = gross - tax;
  const double paid = net + tax;
  family.savings -= paid;
  firm.cash += net;
  world.government.collect_tax(firm.municipality, tax);
  firm.revenue_quarter += paid;

  world.flows.gdp[firm.municipality] += paid;
  world.flows.units_sold[firm.municipality] += units;

  purchase.units = units;
  purchase.money_spent = paid;
  purchase.tax_paid = tax;
  return purchase;
}

}  // namespace metro
