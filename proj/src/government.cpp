#include "metro/government.hpp"

#include <stdexcept>

namespace metro {

void Government::init(const std::vector<double>& initial_qli, GovernmentMode m, double gain) {
  mode = m;
  qli_gain = gain;
  qli_base = initial_qli;
  qli_local.assign(initial_qli.size(), 0.0);
  qli_shared = 0.0;
  treasury = 0.0;
  retained = 0.0;
  carryover = 0.0;
  month_collected.assign(initial_qli.size(), 0.0);
}

void Government::collect_tax(std::size_t municipality, double amount) {
  if (amount < 0.0) throw std::invalid_argument("collect_tax: negative amount");
  month_collected[municipality] += amount;
  treasury += amount;
}

std::vector<double> Government::apply_qli_update(const std::vector<std::int64_t>& populations) {
  const std::size_t n = qli_base.size();
  if (mode == GovernmentMode::unified) {
    double total = 0.0;
    std::int64_t people = 0;
    for (std::size_t m = 0; m < n; ++m) {
      total += month_collected[m];
      people += populations[m];
    }
    if (people > 0) qli_shared += qli_gain * total / static_cast<double>(people);
  } else {
    for (std::size_t m = 0; m < n; ++m) {
      if (populations[m] > 0) {
        qli_local[m] += qli_gain * month_collected[m] / static_cast<double>(populations[m]);
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    month_collected[m] = 0.0;
    out[m] = qli(m);
  }
  return out;
}

}  // namespace metro
