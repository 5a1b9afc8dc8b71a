#pragma once

// Counter-based RNG: Philox 4x32-10 (Salmon et al., SC'11).
// A generator is addressed by (seed, stream): the seed fixes the Philox key,
// the stream occupies the high counter words and the draw index the low ones,
// so every (seed, stream, draw) triple maps to a fixed 128-bit block and
// replications can be evaluated in any order or thread.

#include <array>
#include <cmath>
#include <cstdint>

namespace smlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace detail {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline std::array<std::uint32_t, 4> philox_round(std::array<std::uint32_t, 4> c,
                                                 const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
          static_cast<std::uint32_t>(p0)};
}

}  // namespace detail

inline std::array<std::uint32_t, 4> philox4x32_block(std::array<std::uint32_t, 4> ctr,
                                                     std::array<std::uint32_t, 2> key) {
  ctr = detail::philox_round(ctr, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += detail::kPhiloxW0;
    key[1] += detail::kPhiloxW1;
    ctr = detail::philox_round(ctr, key);
  }
  return ctr;
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) : draw_(0), have_(false), spare_(0) {
    const std::uint64_t k = splitmix64(seed);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    hi_ = {static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  }

  std::uint64_t next_u64() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    const std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
        hi_[0], hi_[1]};
    ++draw_;
    const auto out = philox4x32_block(ctr, key_);
    spare_ = out[2] | (static_cast<std::uint64_t>(out[3]) << 32);
    have_ = true;
    return out[0] | (static_cast<std::uint64_t>(out[1]) << 32);
  }

  // [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1), strictly interior; keeps log() finite
  double uniform_pos() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exp(1)
  double standard_exp() { return -std::log(uniform_pos()); }

  // unbiased integer in [0, n)
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> hi_;
  std::uint64_t draw_;
  bool have_;
  std::uint64_t spare_;
};

}  // namespace smlab
