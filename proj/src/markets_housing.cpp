#include <algorithm>
#include <cmath>

#include "metro/markets.hpp"
#include "metro/world.hpp"

namespace metro {

double house_price(const House& house, double qli) {
  return house.size * house.quality * qli;
}

namespace {

double current_price(const World& world, const House& house) {
  return house_price(house, world.government.qli(house.municipality));
}

// Highest-priced owned house; ties go to the lower house id. Returns the
// position in family.owned_houses.
std::size_t best_house_index(const World& world, const Family& family) {
  std::size_t best = 0;
  double best_price = -1.0;
  for (std::size_t i = 0; i < family.owned_houses.size(); ++i) {
    const House& h = world.houses[family.owned_houses[i]];
    const double p = current_price(world, h);
    if (p > best_price ||
        (p == best_price && h.id < world.houses[family.owned_houses[best]].id)) {
      best = i;
      best_price = p;
    }
  }
  return best;
}

std::size_t second_best_house_index(const World& world, const Family& family,
                                    std::size_t best) {
  std::size_t second = best == 0 ? 1 : 0;
  double second_price = -1.0;
  for (std::size_t i = 0; i < family.owned_houses.size(); ++i) {
    if (i == best) continue;
    const House& h = world.houses[family.owned_houses[i]];
    const double p = current_price(world, h);
    if (p > second_price ||
        (p == second_price && h.id < world.houses[family.owned_houses[second]].id)) {
      second = i;
      second_price = p;
    }
  }
  return second;
}

bool any_adult_employed(const World& world, const Family& family) {
  for (std::uint32_t cid : family.members) {
    const Citizen& c = world.citizens[cid];
    if (c.adult() && c.employer >= 0) return true;
  }
  return false;
}

void move_family(World& world, Family& family, std::uint32_t new_house) {
  House& old_home = world.houses[static_cast<std::size_t>(family.residence)];
  if (old_home.occupant == static_cast<std::int32_t>(family.id)) old_home.occupant = -1;
  House& next = world.houses[new_house];
  next.occupant = static_cast<std::int32_t>(family.id);
  family.residence = static_cast<std::int32_t>(new_house);
  family.municipality = next.municipality;
}

}  // namespace

MoveAction decide_move(const World& world, const Family& family) {
  if (family.owned_houses.empty() || family.residence < 0) return MoveAction::stay;
  const std::size_t best = best_house_index(world, family);
  const bool lives_in_best =
      family.owned_houses[best] == static_cast<std::uint32_t>(family.residence);
  const bool employed = any_adult_employed(world, family);
  if (lives_in_best) {
    if (!employed && family.owned_houses.size() >= 2) return MoveAction::downgrade_and_sell;
    return MoveAction::stay;
  }
  return employed ? MoveAction::move_to_best : MoveAction::stay;
}

std::vector<HouseSale> run_housing_market(World& world, const SimConfig& config,
                                          std::uint32_t month) {
  std::vector<HouseSale> sales;

  // listings: every house without an occupant, at its current price
  struct Listing {
    std::uint32_t house;
    double price;
  };
  std::vector<Listing> listings;
  for (const House& h : world.houses) {
    if (h.occupant < 0) listings.push_back({h.id, current_price(world, h)});
  }
  if (listings.empty()) return sales;
  std::sort(listings.begin(), listings.end(), [](const Listing& a, const Listing& b) {
    if (a.price != b.price) return a.price < b.price;
    return a.house < b.house;
  });

  const auto& families = world.alive_family_ids;
  if (families.empty()) return sales;
  const std::size_t want = static_cast<std::size_t>(
      std::ceil(config.housing_entry_fraction * static_cast<double>(families.size())));
  const std::size_t buyer_count = std::min(want, families.size());
  if (buyer_count == 0) return sales;

  // sample distinct buyers, then order them poorest first
  RngStream rng(world.seed, month, Phase::housing, 0);
  std::vector<std::uint32_t> pool(families);
  struct Buyer {
    std::uint32_t family;
    double savings_at_open;
    bool done = false;
  };
  std::vector<Buyer> buyers;
  buyers.reserve(buyer_count);
  for (std::size_t i = 0; i < buyer_count; ++i) {
    const std::size_t j = i + rng.uniform_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    buyers.push_back({pool[i], world.families[pool[i]].savings});
  }
  std::sort(buyers.begin(), buyers.end(), [](const Buyer& a, const Buyer& b) {
    if (a.savings_at_open != b.savings_at_open) return a.savings_at_open < b.savings_at_open;
    return a.family < b.family;
  });

  std::size_t active_buyers = buyers.size();
  for (const Listing& listing : listings) {
    if (active_buyers == 0) break;
    House& house = world.houses[listing.house];
    if (house.occupant >= 0) continue;  // occupied mid-market by a mover

    bool anyone_could_pay = false;
    for (Buyer& buyer : buyers) {
      if (buyer.done) continue;
      Family& fam = world.families[buyer.family];
      if (fam.savings < listing.price) continue;
      anyone_could_pay = true;

      HouseSale sale;
      sale.house_id = house.id;
      sale.buyer_family = fam.id;
      sale.seller_family = house.owner;
      sale.price = listing.price;

      fam.savings -= listing.price;
      if (house.owner >= 0) {
        Family& seller = world.families[static_cast<std::uint32_t>(house.owner)];
        seller.savings += listing.price;
        auto& owned = seller.owned_houses;
        owned.erase(std::remove(owned.begin(), owned.end(), house.id), owned.end());
      } else {
        // municipal-pool sale: the price leaves circulation
        world.flows.housing_sink += listing.price;
        world.housing_sink_total += listing.price;
      }
      house.owner = static_cast<std::int32_t>(fam.id);
      fam.owned_houses.push_back(house.id);

      sales.push_back(sale);
      world.flows.house_sales += 1;
      buyer.done = true;
      --active_buyers;

      switch (decide_move(world, fam)) {
        case MoveAction::move_to_best:
          move_family(world, fam, fam.owned_houses[best_house_index(world, fam)]);
          break;
        case MoveAction::downgrade_and_sell: {
          // vacating the best house puts it on next month's market
          const std::size_t best = best_house_index(world, fam);
          move_family(world, fam, fam.owned_houses[second_best_house_index(world, fam, best)]);
          break;
        }
        case MoveAction::stay:
          break;
      }
      break;
    }
    if (!anyone_could_pay) break;  // nobody affords the cheapest remaining listing
  }
  return sales;
}

}  // namespace metro
