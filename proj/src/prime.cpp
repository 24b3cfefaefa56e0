#include "arith_orbit/prime.hpp"

#include "arith_orbit/error.hpp"

#include <array>

namespace arith_orbit {

namespace {

constexpr std::array<unsigned long, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Bases 2..37 are a deterministic witness set below this bound.
const BigInt& witness_bound() {
    static const BigInt bound("3317044064679887385961981", 10);
    return bound;
}

constexpr unsigned long kTrialLimit = 1000000;

}  // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (unsigned long w : kWitnesses) {
        if (n == w) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), w)) return false;
    }
    if (n >= witness_bound())
        throw PreconditionError("primality of " + n.get_str() + " cannot be decided deterministically");

    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    const BigInt n_minus_1 = n - 1;
    BigInt x;
    for (unsigned long w : kWitnesses) {
        BigInt base(w);
        mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        if (x == 1 || x == n_minus_1) continue;
        bool composite = true;
        for (unsigned long r = 1; r < s; ++r) {
            mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
            if (x == n_minus_1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Prime::Prime(const BigInt& value) : value_(value) {
    if (!is_prime(value_)) throw ConfigError(value_.get_str() + " is not prime");
}

std::vector<Prime> prime_divisors(const BigInt& n) {
    std::vector<Prime> out;
    BigInt m = abs(n);
    if (m <= 1) return out;
    for (unsigned long q = 2; q <= kTrialLimit; q += (q == 2 ? 1 : 2)) {
        if (BigInt(q) * q > m) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
            out.emplace_back(q);
            while (mpz_divisible_ui_p(m.get_mpz_t(), q)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
        }
    }
    if (m > 1) {
        if (BigInt(kTrialLimit) * kTrialLimit < m && !is_prime(m))
            throw PreconditionError("cannot factor " + n.get_str() + ": composite cofactor " + m.get_str());
        out.emplace_back(m);
    }
    return out;
}

}  // namespace arith_orbit
