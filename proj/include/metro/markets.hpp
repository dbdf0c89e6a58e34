#pragma once

#include <cstdint>
#include <vector>

#include "metro/rng.hpp"
#include "metro/simconfig.hpp"

namespace metro {

struct World;
struct Family;
struct Firm;
struct House;

struct GoodsPurchase {
  std::uint32_t family_id = 0;
  std::uint32_t firm_id = 0;
  double money_spent = 0.0;  // gross, tax included
  double units = 0.0;
  double tax_paid = 0.0;
};

struct HouseSale {
  std::uint32_t house_id = 0;
  std::uint32_t buyer_family = 0;
  std::int32_t seller_family = -1;  // -1 = municipal pool
  double price = 0.0;
};

enum class MoveAction { stay, move_to_best, downgrade_and_sell };

// Budget the family sets aside this month: pooled cash * beta * U(0,1].
double decide_consumption(double pooled_cash, double beta, RngStream& rng);

// Samples `market_size` firms; with probability 1/2 picks the one nearest to
// the family's residence, otherwise the cheapest. Ties go to the lower id.
// Returns -1 when the world has no firms.
std::int32_t choose_firm(const World& world, const Family& family, int market_size,
                         RngStream& rng);

// Buys min(stock, spend/price) units; the firm keeps the net, the tax goes to
// the ledger of the firm's municipality, unspent money stays with the family.
GoodsPurchase execute_purchase(World& world, Family& family, Firm& firm, double spend,
                               double tax_rate);

// size * quality * QLI of the house's municipality.
double house_price(const House& house, double qli);

// Post-purchase relocation rule. `adult_employed`: at least one member past
// labor-entry age holds a job; `adults_all_unemployed` is its dual including
// the no-adults case.
MoveAction decide_move(const World& world, const Family& family);

// Monthly housing market: samples ceil(entry_fraction * families) buyers,
// lists every unoccupied house at its current price, sorts listings by price
// and buyers by savings, and walks buyers per listing (first one that can pay
// buys; market closes when nobody can afford the cheapest remaining listing).
// Each buyer then applies the relocation rule.
std::vector<HouseSale> run_housing_market(World& world, const SimConfig& config,
                                          std::uint32_t month);

struct LaborOutcome {
  std::int64_t hires = 0;
  std::int64_t fires = 0;
};

// Monthly labor market: cash-short firms fire one employee (lowest
// qualification first); firms above their cash reserve (or idle firms with any
// stock or cash) post openings; unemployed citizens of working age apply;
// firms pick in descending paying-wage order, each position filled either by
// best qualification or by shortest distance to the firm.
LaborOutcome run_labor_market(World& world, const SimConfig& config, std::uint32_t month);

}  // namespace metro
