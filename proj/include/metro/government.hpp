#pragma once

#include <cstdint>
#include <vector>

namespace metro {

enum class GovernmentMode { individual, unified };

// Fiscal state. Taxes are credited at the municipality of sale; QLI rises as
// a linear function of the month's collection divided by current population.
// In unified mode the whole region is one fiscal entity: one pooled ledger
// and one homogeneous QLI increment for every municipality, tracked as a
// single shared accumulator so cross-municipality gaps stay constant by
// construction.
struct Government {
  GovernmentMode mode = GovernmentMode::individual;
  double qli_gain = 1e-4;
  double treasury = 0.0;  // current balance, including the retained stock
  double retained = 0.0;   // cumulative public-investment share, never spent
  double carryover = 0.0;  // budget that found no goods last month
  std::vector<double> qli_base;
  std::vector<double> qli_local;   // per-municipality accumulated increments
  double qli_shared = 0.0;         // unified-mode accumulated increment
  std::vector<double> month_collected;  // per municipality, reset monthly

  void init(const std::vector<double>& initial_qli, GovernmentMode m, double gain);

  double qli(std::size_t municipality) const {
    return qli_base[municipality] +
           (mode == GovernmentMode::unified ? qli_shared : qli_local[municipality]);
  }

  // Credits `amount` of tax revenue collected in `municipality`. Rejects
  // negative amounts.
  void collect_tax(std::size_t municipality, double amount);

  // Monthly QLI update from this month's collections; returns the new QLI
  // vector and resets the monthly ledger. Zero-population municipalities are
  // skipped in individual mode.
  std::vector<double> apply_qli_update(const std::vector<std::int64_t>& populations);
};

}  // namespace metro
