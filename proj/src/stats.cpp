#include "metro/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "metro/markets.hpp"
#include "metro/world.hpp"

namespace metro {

const char* const kSeriesHeader =
    "run_id,month,municipality,population,families,qli,taxes,gdp,unemployment,gini,"
    "mean_house_price,mean_goods_price,mean_commute_km,vacancy_rate";

double gini(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("gini: empty list");
  std::vector<double> sorted(values.begin(), values.end());
  double sum = 0.0;
  for (double v : sorted) {
    if (v < 0.0) throw std::invalid_argument("gini: negative value");
    sum += v;
  }
  if (sum <= 0.0) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  // sorted form of the pairwise mean absolute difference
  const double n = static_cast<double>(sorted.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    acc += (2.0 * (static_cast<double>(i) + 1.0) - n - 1.0) * sorted[i];
  }
  return acc / (n * sum);
}

double weighted_qli(const World& world) {
  double qli_sum = 0.0;
  std::int64_t people = 0;
  const auto pops = world.population_by_municipality();
  for (std::size_t m = 0; m < pops.size(); ++m) {
    qli_sum += world.government.qli(m) * static_cast<double>(pops[m]);
    people += pops[m];
  }
  if (people == 0) throw std::invalid_argument("weighted_qli: zero total population");
  return qli_sum / static_cast<double>(people);
}

double gdp_month(const World& world) {
  double total = 0.0;
  for (double g : world.flows.gdp) total += g;
  return total;
}

double unemployment_rate(const World& world) {
  std::int64_t workforce = 0, unemployed = 0;
  for (const Citizen& c : world.citizens) {
    if (!c.alive || !c.working_age()) continue;
    ++workforce;
    if (c.employer < 0) ++unemployed;
  }
  return workforce == 0 ? 0.0
                        : static_cast<double>(unemployed) / static_cast<double>(workforce);
}

namespace {

struct MuniAccum {
  std::int64_t population = 0;
  std::int64_t families = 0;
  std::int64_t workforce = 0;
  std::int64_t unemployed = 0;
  double commute_sum = 0.0;
  std::int64_t commuters = 0;
  double house_price_sum = 0.0;
  std::int64_t house_count = 0;
  std::int64_t vacant = 0;
  double goods_price_sum = 0.0;
  std::int64_t firm_count = 0;
  std::vector<double> wealth;
};

double safe_mean(double sum, std::int64_t n) {
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace

std::vector<MonthlyRow> collect_month_rows(const World& world, int run_id, int month) {
  const std::size_t n_muni = world.municipality_count();
  std::vector<MuniAccum> acc(n_muni);
  MuniAccum all;

  // family wealth: savings + member cash + market value of owned houses
  std::vector<double> family_wealth(world.families.size(), 0.0);
  for (const Family& f : world.families) {
    if (!f.alive) continue;
    family_wealth[f.id] = f.savings;
  }
  for (const Citizen& c : world.citizens) {
    if (!c.alive) continue;
    family_wealth[world.families[c.family].id] += c.money;
  }
  for (const House& h : world.houses) {
    const double price = house_price(h, world.government.qli(h.municipality));
    MuniAccum& a = acc[h.municipality];
    a.house_price_sum += price;
    a.house_count += 1;
    if (h.occupant < 0) a.vacant += 1;
    if (h.owner >= 0 && world.families[static_cast<std::uint32_t>(h.owner)].alive) {
      family_wealth[static_cast<std::uint32_t>(h.owner)] += price;
    }
  }

  for (const Family& f : world.families) {
    if (!f.alive) continue;
    MuniAccum& a = acc[f.municipality];
    a.population += static_cast<std::int64_t>(f.members.size());
    a.families += 1;
    a.wealth.push_back(family_wealth[f.id]);
    all.wealth.push_back(family_wealth[f.id]);
  }

  for (const Citizen& c : world.citizens) {
    if (!c.alive) continue;
    const Family& fam = world.families[c.family];
    MuniAccum& a = acc[fam.municipality];
    if (c.working_age()) {
      a.workforce += 1;
      if (c.employer < 0) a.unemployed += 1;
    }
    if (c.employer >= 0 && fam.residence >= 0) {
      const double km =
          distance(world.houses[static_cast<std::size_t>(fam.residence)].coord,
                   world.firms[static_cast<std::size_t>(c.employer)].coord);
      a.commute_sum += km;
      a.commuters += 1;
    }
  }

  for (const Firm& f : world.firms) {
    acc[f.municipality].goods_price_sum += f.price;
    acc[f.municipality].firm_count += 1;
  }

  std::vector<MonthlyRow> rows;
  rows.reserve(n_muni + 1);
  double qli_weighted = 0.0;
  for (std::size_t m = 0; m < n_muni; ++m) {
    const MuniAccum& a = acc[m];
    MonthlyRow row;
    row.run_id = run_id;
    row.month = month;
    row.municipality = world.municipalities[m].id;
    row.population = a.population;
    row.families = a.families;
    row.qli = world.government.qli(m);
    row.taxes = world.flows.taxes.empty() ? 0.0 : world.flows.taxes[m];
    row.gdp = world.flows.gdp.empty() ? 0.0 : world.flows.gdp[m];
    row.unemployment = a.workforce == 0 ? 0.0
                                        : static_cast<double>(a.unemployed) /
                                              static_cast<double>(a.workforce);
    row.gini = a.wealth.empty() ? 0.0 : gini(a.wealth);
    row.mean_house_price = safe_mean(a.house_price_sum, a.house_count);
    row.mean_goods_price = safe_mean(a.goods_price_sum, a.firm_count);
    row.mean_commute_km = safe_mean(a.commute_sum, a.commuters);
    row.vacancy_rate = a.house_count == 0 ? 0.0
                                          : static_cast<double>(a.vacant) /
                                                static_cast<double>(a.house_count);
    rows.push_back(row);

    all.population += a.population;
    all.families += a.families;
    all.workforce += a.workforce;
    all.unemployed += a.unemployed;
    all.commute_sum += a.commute_sum;
    all.commuters += a.commuters;
    all.house_price_sum += a.house_price_sum;
    all.house_count += a.house_count;
    all.vacant += a.vacant;
    all.goods_price_sum += a.goods_price_sum;
    all.firm_count += a.firm_count;
    qli_weighted += world.government.qli(m) * static_cast<double>(a.population);
  }

  MonthlyRow agg;
  agg.run_id = run_id;
  agg.month = month;
  agg.municipality = kAggregateId;
  agg.population = all.population;
  agg.families = all.families;
  agg.qli = all.population == 0 ? 0.0 : qli_weighted / static_cast<double>(all.population);
  for (const MonthlyRow& row : rows) {
    agg.taxes += row.taxes;
    agg.gdp += row.gdp;
  }
  agg.unemployment = all.workforce == 0 ? 0.0
                                        : static_cast<double>(all.unemployed) /
                                              static_cast<double>(all.workforce);
  agg.gini = all.wealth.empty() ? 0.0 : gini(all.wealth);
  agg.mean_house_price = safe_mean(all.house_price_sum, all.house_count);
  agg.mean_goods_price = safe_mean(all.goods_price_sum, all.firm_count);
  agg.mean_commute_km = safe_mean(all.commute_sum, all.commuters);
  agg.vacancy_rate = all.house_count == 0 ? 0.0
                                          : static_cast<double>(all.vacant) /
                                                static_cast<double>(all.house_count);
  if (!world.flows.family_labor_income.empty()) {
    std::vector<double> incomes;
    incomes.reserve(static_cast<std::size_t>(all.families));
    for (const Family& f : world.families) {
      if (f.alive) incomes.push_back(world.flows.family_labor_income[f.id]);
    }
    if (!incomes.empty()) agg.gini_labor_income = gini(incomes);
  }
  rows.push_back(agg);
  return rows;
}

std::string format_row(const MonthlyRow& row) {
  char muni[16];
  if (row.municipality == kAggregateId) {
    std::snprintf(muni, sizeof muni, "AGGREGATE");
  } else {
    std::snprintf(muni, sizeof muni, "%d", row.municipality);
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "%d,%d,%s,%lld,%lld,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g",
                row.run_id, row.month, muni, static_cast<long long>(row.population),
                static_cast<long long>(row.families), row.qli, row.taxes, row.gdp,
                row.unemployment, row.gini, row.mean_house_price, row.mean_goods_price,
                row.mean_commute_km, row.vacancy_rate);
  return buf;
}

void write_series(const std::vector<MonthlyRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_series: cannot open '" + path + "'");
  out << kSeriesHeader << '\n';
  for (const MonthlyRow& row : rows) {
    out << format_row(row) << '\n';
  }
  if (!out) throw std::runtime_error("write_series: write failed for '" + path + "'");
}

}  // namespace metro
