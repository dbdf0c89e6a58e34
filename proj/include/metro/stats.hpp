#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace metro {

struct World;

constexpr int kAggregateId = -1;

struct MonthlyRow {
  int run_id = 0;
  int month = 0;
  int municipality = kAggregateId;  // municipality id, or kAggregateId
  std::int64_t population = 0;
  std::int64_t families = 0;
  double qli = 0.0;
  double taxes = 0.0;
  double gdp = 0.0;
  double unemployment = 0.0;
  double gini = 0.0;
  double mean_house_price = 0.0;
  double mean_goods_price = 0.0;
  double mean_commute_km = 0.0;
  double vacancy_rate = 0.0;
  // labor-income counterpart of `gini`; carried on the aggregate row for run
  // summaries, not part of the CSV schema
  double gini_labor_income = 0.0;
};

// Mean absolute pairwise difference over twice the mean. Values must be
// non-negative; an all-zero list yields 0. Throws on an empty list.
double gini(std::span<const double> values);

// Population-weighted mean QLI across municipalities.
double weighted_qli(const World& world);

// Gross (pre-tax) sales value of the current month.
double gdp_month(const World& world);

// Unemployed share of the working-age population; 0 when there is none.
double unemployment_rate(const World& world);

// One row per municipality plus the aggregate row.
std::vector<MonthlyRow> collect_month_rows(const World& world, int run_id, int month);

// CSV with the fixed header; one row per municipality per month plus
// AGGREGATE. Values carry 12 significant digits.
void write_series(const std::vector<MonthlyRow>& rows, const std::string& path);

extern const char* const kSeriesHeader;

std::string format_row(const MonthlyRow& row);

}  // namespace metro
