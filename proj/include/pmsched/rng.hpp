#pragma once

#include <cstdint>
#include <random>

namespace pmsched {

// Every random draw in the project goes through this engine so that results
// are reproducible from a 64-bit seed on any platform and from any language:
// the raw stream is the standard MT19937-64, and bounded integers are obtained
// by multiply-shift scaling of one 64-bit word, floor(x * k / 2^64), with no
// modulo and no rejection loop.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on {0, ..., k - 1}; k >= 1.
  std::uint64_t below(std::uint64_t k) {
    __extension__ typedef unsigned __int128 u128;
    const u128 x = engine_();
    return static_cast<std::uint64_t>((x * k) >> 64);
  }

  // Uniform on {lo, ..., hi}; lo <= hi.
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pmsched
