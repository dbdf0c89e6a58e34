#pragma once

#include <array>
#include <cstdint>

namespace metro {

// Counter-based generator (Philox4x32-10). Every random decision in a run is
// drawn from a substream keyed by (seed, month, phase, entity id), so results
// do not depend on iteration order or on how work is split across threads.

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

enum class Phase : std::uint32_t {
  gen_citizens = 1,
  gen_families = 2,
  gen_houses = 3,
  gen_firms = 4,
  demographics = 5,
  inheritance = 6,
  goods = 7,
  labor = 8,
  housing = 9,
};

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t month, Phase phase, std::uint64_t entity);

  std::uint64_t next_u64();

  // [0, 1)
  double uniform01();
  // (0, 1]
  double uniform01_closed();
  // integer in [0, n); n must be > 0
  std::uint64_t uniform_below(std::uint64_t n);
  bool bernoulli(double p);
  // real in [lo, hi)
  double uniform(double lo, double hi);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int avail_ = 0;  // unread u64 halves left in block_
};

}  // namespace metro
