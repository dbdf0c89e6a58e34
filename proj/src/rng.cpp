#include "metro/rng.hpp"

namespace metro {

namespace {

constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

inline void round_once(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

// splitmix64 finalizer; spreads structured stream ids across the counter space
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    round_once(counter, key);
    if (r < 9) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
  }
  return counter;
}

RngStream::RngStream(std::uint64_t seed, std::uint32_t month, Phase phase, std::uint64_t entity) {
  key_ = {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  // month:16 | phase:6 | entity:42, mixed so neighbouring streams share no structure
  const std::uint64_t packed = (static_cast<std::uint64_t>(month) << 48) |
                               (static_cast<std::uint64_t>(phase) << 42) |
                               (entity & ((1ull << 42) - 1));
  stream_ = mix64(packed);
}

void RngStream::refill() {
  block_ = philox4x32({static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
                       static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
                      key_);
  ++draw_;
  avail_ = 2;
}

std::uint64_t RngStream::next_u64() {
  if (avail_ == 0) refill();
  --avail_;
  const int base = avail_ * 2;  // halves in order: words 2,3 then 0,1
  return static_cast<std::uint64_t>(block_[base]) |
         (static_cast<std::uint64_t>(block_[base + 1]) << 32);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform01_closed() {
  return 1.0 - uniform01();
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  // Lemire's bounded draw, bias-free
  std::uint64_t x = next_u64();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  std::uint64_t l = static_cast<std::uint64_t>(m);
  if (l < n) {
    const std::uint64_t floor = (0 - n) % n;
    while (l < floor) {
      x = next_u64();
      m = static_cast<unsigned __int128>(x) * n;
      l = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool RngStream::bernoulli(double p) {
  return uniform01() < p;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

}  // namespace metro
