#pragma once

#include <cstdint>

#include "heisgamma/scalar.hpp"

namespace heisgamma {

// xorshift64* — fully specified here so that seeded runs are reproducible
// across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545f4914f6cdd1dull;
    }

    // Uniform in [lo, hi], inclusive.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Random reduced fraction with numerator in [-num_max, num_max] and
    // denominator in [1, den_max].
    Rational rational(long long num_max = 12, long long den_max = 6) {
        return Rational(range(-num_max, num_max), range(1, den_max));
    }

    Rational nonzero_rational(long long num_max = 12, long long den_max = 6) {
        for (;;) {
            Rational q = rational(num_max, den_max);
            if (q != 0) return q;
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace heisgamma
