#pragma once

#include "arith_orbit/affine.hpp"
#include "arith_orbit/bigfloat.hpp"
#include "arith_orbit/orbit.hpp"
#include "arith_orbit/prime.hpp"

#include <cstdint>
#include <vector>

namespace arith_orbit {

/// Primes dividing the denominator of T or D, split by comparing
/// nu_p(den D) with 2 nu_p(den T):
///   P1 = { p : nu_p(den D) <  2 nu_p(den T) }
///   P2 = { p : nu_p(den D) >= 2 nu_p(den T), nu_p(den D) != 0 }
struct PrimeFamilies {
    std::vector<Prime> p1;
    std::vector<Prime> p2;
};

PrimeFamilies prime_families(const Rational& T, const Rational& D);

/// coefficient * log(prime)
struct LogTerm {
    Prime prime;
    Rational coefficient;
};

/// h* = sum_{P1} nu_p(den T) log p + 1/2 sum_{P2} nu_p(den D) log p, kept as
/// exact coefficients of log p (zero terms omitted).
std::vector<LogTerm> h_star_terms(const Rational& T, const Rational& D);

/// Evaluates a sum of LogTerms at the given working precision.
BigFloat evaluate(const std::vector<LogTerm>& terms, mpfr_prec_t bits);

/// h* evaluated to `bits` of working precision.
double h_star(const Rational& T, const Rational& D, mpfr_prec_t bits = 128);

/// log|alpha| for a largest-modulus root alpha of x^2 - T x + D:
/// log((|T| + sqrt(T^2 - 4D)) / 2) for a real pair, log(D) / 2 for a
/// complex pair. Throws when D = 0 and T = 0 (no nonzero eigenvalue).
BigFloat spectral_log_radius(const Rational& T, const Rational& D, mpfr_prec_t bits = 128);

/// h = max(0, log|alpha|) + h*, valid for almost all rational initial points
/// (points on rational eigenlines and similar exceptional sets are not
/// characterized).
struct GlobalHeightPrediction {
    std::vector<LogTerm> h_star_terms;  // exact part
    BigFloat h_star;
    BigFloat log_alpha;
    BigFloat value;
    mpfr_prec_t precision_bits;

    /// Per-step prediction for a return map of period n.
    GlobalHeightPrediction divided_by(std::uint64_t n) const;
};

GlobalHeightPrediction predict_h(const Rational& T, const Rational& D, mpfr_prec_t bits = 128);
GlobalHeightPrediction predict_h(const AffineMap2& map, mpfr_prec_t bits = 128);

/// log H(z_T) / T after advancing the orbit T_max steps from its current point.
double measured_h(Orbit& orbit, std::uint64_t T_max);

}  // namespace arith_orbit
