#include <algorithm>
#include <cmath>
#include <limits>

#include "metro/markets.hpp"
#include "metro/world.hpp"

namespace metro {

namespace {

struct Applicant {
  std::uint32_t citizen;
  Coord home;
  std::uint8_t qualification;
  bool taken = false;
};

// Applicant pool with two fast argmin/argmax views: per-qualification buckets
// (sorted by citizen id) and a uniform spatial grid for nearest-to-firm
// queries. Removal marks entries taken; cursors and scans skip them.
class ApplicantPool {
 public:
  ApplicantPool(std::vector<Applicant> pool, const Rect& bounds)
      : pool_(std::move(pool)), bounds_(bounds) {
    remaining_ = pool_.size();
    for (auto& bucket : bucket_cursor_) bucket = 0;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      buckets_[pool_[i].qualification].push_back(i);
    }
    const double side = std::sqrt(static_cast<double>(std::max<std::size_t>(remaining_, 1)) / 2.0);
    cells_ = std::clamp(static_cast<int>(side), 4, 512);
    cell_w_ = std::max((bounds_.x1 - bounds_.x0) / cells_, 1e-9);
    cell_h_ = std::max((bounds_.y1 - bounds_.y0) / cells_, 1e-9);
    grid_.assign(static_cast<std::size_t>(cells_) * cells_, {});
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      grid_[cell_of(pool_[i].home)].push_back(i);
    }
  }

  std::size_t remaining() const { return remaining_; }

  // Highest qualification, ties to the lower citizen id.
  std::int64_t take_best_qualified() {
    for (int q = kQualificationLevels; q >= 1; --q) {
      auto& bucket = buckets_[q];
      std::size_t& cur = bucket_cursor_[q];
      while (cur < bucket.size() && pool_[bucket[cur]].taken) ++cur;
      if (cur < bucket.size()) {
        const std::size_t idx = bucket[cur];
        take(idx);
        return pool_[idx].citizen;
      }
    }
    return -1;
  }

  // Nearest to `from`, ties to the lower citizen id.
  std::int64_t take_nearest(Coord from) {
    if (remaining_ == 0) return -1;
    if (remaining_ <= 48) return take_nearest_linear(from);

    const int cx = std::clamp(static_cast<int>((from.x - bounds_.x0) / cell_w_), 0, cells_ - 1);
    const int cy = std::clamp(static_cast<int>((from.y - bounds_.y0) / cell_h_), 0, cells_ - 1);
    std::int64_t best = -1;
    std::size_t best_idx = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    const double min_cell = std::min(cell_w_, cell_h_);
    for (int ring = 0; ring < cells_; ++ring) {
      // cells at Chebyshev distance `ring` are at least (ring-1) cells away
      if (best >= 0) {
        const double reach = (ring - 1) * min_cell;
        if (reach > 0.0 && reach * reach > best_d2) break;
      }
      const int x0 = cx - ring, x1 = cx + ring, y0 = cy - ring, y1 = cy + ring;
      for (int y = std::max(y0, 0); y <= std::min(y1, cells_ - 1); ++y) {
        const bool edge_row = (y == y0 || y == y1);
        for (int x = std::max(x0, 0); x <= std::min(x1, cells_ - 1); ++x) {
          if (!edge_row && x != x0 && x != x1) continue;
          for (std::size_t idx : grid_[static_cast<std::size_t>(y) * cells_ + x]) {
            const Applicant& a = pool_[idx];
            if (a.taken) continue;
            const double d2 = squared_distance(from, a.home);
            if (d2 < best_d2 || (d2 == best_d2 && best >= 0 &&
                                 a.citizen < static_cast<std::uint32_t>(best))) {
              best = a.citizen;
              best_idx = idx;
              best_d2 = d2;
            }
          }
        }
      }
    }
    if (best >= 0) take(best_idx);
    return best;
  }

 private:
  std::int64_t take_nearest_linear(Coord from) {
    std::int64_t best = -1;
    std::size_t best_idx = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      const Applicant& a = pool_[i];
      if (a.taken) continue;
      const double d2 = squared_distance(from, a.home);
      if (d2 < best_d2 ||
          (d2 == best_d2 && best >= 0 && a.citizen < static_cast<std::uint32_t>(best))) {
        best = a.citizen;
        best_idx = i;
        best_d2 = d2;
      }
    }
    if (best >= 0) take(best_idx);
    return best;
  }

  std::size_t cell_of(Coord c) const {
    const int x = std::clamp(static_cast<int>((c.x - bounds_.x0) / cell_w_), 0, cells_ - 1);
    const int y = std::clamp(static_cast<int>((c.y - bounds_.y0) / cell_h_), 0, cells_ - 1);
    return static_cast<std::size_t>(y) * cells_ + x;
  }

  void take(std::size_t idx) {
    pool_[idx].taken = true;
    --remaining_;
  }

  std::vector<Applicant> pool_;
  Rect bounds_;
  std::vector<std::size_t> buckets_[kQualificationLevels + 1];
  std::size_t bucket_cursor_[kQualificationLevels + 1];
  std::vector<std::vector<std::size_t>> grid_;
  int cells_ = 1;
  double cell_w_ = 1.0, cell_h_ = 1.0;
  std::size_t remaining_ = 0;
};

int population_median_qualification(const World& world) {
  std::size_t counts[kQualificationLevels + 1] = {};
  std::size_t alive = 0;
  for (const Citizen& c : world.citizens) {
    if (!c.alive) continue;
    ++counts[c.qualification];
    ++alive;
  }
  if (alive == 0) return 1;
  std::size_t acc = 0;
  for (int q = 1; q <= kQualificationLevels; ++q) {
    acc += counts[q];
    if (acc * 2 >= alive) return q;
  }
  return kQualificationLevels;
}

Rect world_bounds(const World& world) {
  Rect r = world.municipalities.front().region;
  for (const auto& m : world.municipalities) {
    r.x0 = std::min(r.x0, m.region.x0);
    r.y0 = std::min(r.y0, m.region.y0);
    r.x1 = std::max(r.x1, m.region.x1);
    r.y1 = std::max(r.y1, m.region.y1);
  }
  return r;
}

}  // namespace

LaborOutcome run_labor_market(World& world, const SimConfig& config, std::uint32_t month) {
  LaborOutcome outcome;

  // applicants enter before this month's layoffs take effect
  std::vector<Applicant> applicants;
  for (const Citizen& c : world.citizens) {
    if (!c.alive || c.employer >= 0 || !c.working_age()) continue;
    const Family& fam = world.families[c.family];
    if (fam.residence < 0) continue;
    applicants.push_back({c.id, world.houses[static_cast<std::size_t>(fam.residence)].coord,
                          c.qualification, false});
  }

  // cash-short firms let one employee go, lowest qualification first
  for (Firm& firm : world.firms) {
    if (firm.employees.empty()) continue;
    if (firm.cash >= monthly_payroll(firm, config.wage_base)) continue;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < firm.employees.size(); ++i) {
      const Citizen& a = world.citizens[firm.employees[i]];
      const Citizen& b = world.citizens[firm.employees[worst]];
      if (a.qualification < b.qualification ||
          (a.qualification == b.qualification && a.id < b.id)) {
        worst = i;
      }
    }
    Citizen& fired = world.citizens[firm.employees[worst]];
    fired.employer = -1;
    firm.qualification_sum -= fired.qualification;
    firm.employees.erase(firm.employees.begin() + static_cast<std::ptrdiff_t>(worst));
    outcome.fires += 1;
  }

  if (applicants.empty() || world.firms.empty() || config.openings_per_month == 0) {
    world.flows.fires += outcome.fires;
    return outcome;
  }

  // offering firms: liquid beyond the reserve, or idle with anything to run on
  struct Offer {
    std::uint32_t firm;
    double wage;
  };
  const int median_qual = population_median_qualification(world);
  std::vector<Offer> offers;
  for (const Firm& firm : world.firms) {
    const bool liquid = firm.cash > cash_reserve(firm, config.wage_base, config.reserve_months);
    const bool idle_restart = firm.employees.empty() && (firm.stock > 0.0 || firm.cash > 0.0);
    if (liquid || idle_restart) {
      offers.push_back({firm.id, paying_wage(firm, config.wage_base, median_qual)});
    }
  }
  std::sort(offers.begin(), offers.end(), [](const Offer& a, const Offer& b) {
    if (a.wage != b.wage) return a.wage > b.wage;
    return a.firm < b.firm;
  });

  ApplicantPool pool(std::move(applicants), world_bounds(world));

  for (const Offer& offer : offers) {
    if (pool.remaining() == 0) break;
    Firm& firm = world.firms[offer.firm];
    RngStream rng(world.seed, month, Phase::labor, offer.firm);
    for (int slot = 0; slot < config.openings_per_month && pool.remaining() > 0; ++slot) {
      const bool by_distance = rng.bernoulli(config.distance_share);
      const std::int64_t picked =
          by_distance ? pool.take_nearest(firm.coord) : pool.take_best_qualified();
      if (picked < 0) break;
      Citizen& hired = world.citizens[static_cast<std::size_t>(picked)];
      hired.employer = static_cast<std::int32_t>(firm.id);
      firm.employees.push_back(hired.id);
      firm.qualification_sum += hired.qualification;
      outcome.hires += 1;
    }
  }

  world.flows.hires += outcome.hires;
  world.flows.fires += outcome.fires;
  return outcome;
}

}  // namespace metro
