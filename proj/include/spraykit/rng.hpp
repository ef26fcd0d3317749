#pragma once

// Deterministic seeded streams of bounded rationals. mt19937_64 is fully
// specified by the standard, so (seed, count) pins the byte-exact sequence.

#include <cstdint>
#include <random>

#include "spraykit/rational.hpp"

namespace spraykit {

class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform-ish integer in [lo, hi]; modulo bias is irrelevant here.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }

  // Rational with |numerator| <= bound and 1 <= denominator <= bound.
  Rational next_rational(std::int64_t bound = kDefaultMagnitudeBound) {
    const std::int64_t n = next_int(-bound, bound);
    const std::int64_t d = next_int(1, bound);
    return make_rational(Integer(n), Integer(d));
  }

  Rational next_nonzero_rational(std::int64_t bound = kDefaultMagnitudeBound) {
    for (;;) {
      Rational q = next_rational(bound);
      if (q != 0) return q;
    }
  }

  // Default magnitude bound for sampled parameters; keeps big-integer growth
  // manageable through deep compositions.
  static constexpr std::int64_t kDefaultMagnitudeBound = 10000;

 private:
  std::mt19937_64 gen_;
};

}  // namespace spraykit
