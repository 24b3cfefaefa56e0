#pragma once

#include "arith_orbit/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

namespace test_support {

/// Frozen values from tests/oracles/generate.py.
inline const nlohmann::json& oracles() {
    static const nlohmann::json doc = [] {
        std::ifstream in(ARITH_ORBIT_ORACLE_FILE);
        if (!in) throw std::runtime_error("missing oracle file " + std::string(ARITH_ORBIT_ORACLE_FILE));
        return nlohmann::json::parse(in);
    }();
    return doc;
}

inline arith_orbit::Rational q(const std::string& s) { return arith_orbit::Rational::parse(s); }

inline arith_orbit::PlanePoint pt(const std::string& x, const std::string& y) { return {q(x), q(y)}; }

/// Seeded source of small random rationals.
class RandomRationals {
public:
    explicit RandomRationals(std::uint64_t seed) : rng_(seed) {}

    /// num in [-bound, bound], den in [1, bound].
    arith_orbit::Rational next(long bound = 50) {
        std::uniform_int_distribution<long> num(-bound, bound);
        std::uniform_int_distribution<long> den(1, bound);
        return arith_orbit::Rational(num(rng_), den(rng_));
    }
    arith_orbit::Rational nonzero(long bound = 50) {
        for (;;) {
            arith_orbit::Rational r = next(bound);
            if (!r.is_zero()) return r;
        }
    }
    arith_orbit::PlanePoint point(long bound = 50) { return {next(bound), next(bound)}; }
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace test_support
