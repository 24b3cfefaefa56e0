#pragma once

#include "arith_orbit/piecewise.hpp"

#include <string>
#include <vector>

namespace arith_orbit {

/// The smallest module L = (1/N) K with F(L^2) in L^2, where K is the ring of
/// rationals whose denominators are supported on the prime set P of F
/// (K = Z when P is empty).
///
/// Piece i contributes d_i, the lcm of the denominators of its translation
/// (b_i, 0), and d'_i, the largest divisor of d_i coprime to every prime of
/// P. N is the lcm of the d'_i. Only finite piece sets exist here, so N is
/// always defined.
struct PhaseModule {
    std::vector<Prime> primes;
    BigInt N;
    std::vector<Rational> generators;  // translation components b_i
    std::vector<BigInt> d;
    std::vector<BigInt> d_prime;

    /// "Z", "Z[1/6]", "(1/5)Z", "(1/5)Z[1/2]", ...
    std::string describe() const;
};

PhaseModule build_phase_module(const PiecewiseMap& map);

/// True iff N x and N y both have denominators supported on P.
bool membership(const PlanePoint& z, const PhaseModule& module);

}  // namespace arith_orbit
