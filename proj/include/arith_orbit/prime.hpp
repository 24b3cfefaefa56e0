#pragma once

#include "arith_orbit/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace arith_orbit {

/// Deterministic Miller-Rabin; exact for every n < 3.3e24 (the first twelve
/// prime bases). Larger inputs are rejected rather than guessed.
bool is_prime(const BigInt& n);

/// A verified prime.
class Prime {
public:
    explicit Prime(const BigInt& value);
    explicit Prime(unsigned long value) : Prime(BigInt(value)) {}

    const BigInt& value() const { return value_; }
    unsigned long ulong() const { return value_.get_ui(); }
    std::string str() const { return value_.get_str(); }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Prime& a, const Prime& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    BigInt value_;
};

/// Distinct prime divisors of |n| in increasing order (empty for |n| <= 1).
/// Trial division plus a primality check on the cofactor; throws when a
/// composite cofactor is too large to split this way.
std::vector<Prime> prime_divisors(const BigInt& n);

}  // namespace arith_orbit
