#pragma once

#include "arith_orbit/prime.hpp"
#include "arith_orbit/rational.hpp"

namespace arith_orbit {

/// H(m/n) = max(|m|, n) of the reduced form; H(0) = 1.
BigInt height_q(const Rational& r);
/// H(z) = max(H(x), H(y)).
BigInt height_pt(const PlanePoint& z);

/// Natural log of a positive big integer, accurate to double precision
/// regardless of magnitude.
double log_big(const BigInt& n);

/// nu_p(r) = nu_p(numerator) - nu_p(denominator); +inf for r = 0.
ExtendedInt val_p(const Rational& r, const Prime& p);
ExtendedInt val_p(const BigInt& n, const Prime& p);
/// nu_p(z) = min(nu_p(x), nu_p(y)); +inf iff z is the origin.
ExtendedInt val_pt(const PlanePoint& z, const Prime& p);

/// |r|_p = p^(-nu_p(r)), exact; |0|_p = 0.
Rational padic_abs(const Rational& r, const Prime& p);
/// ||z||_p = max(|x|_p, |y|_p).
Rational padic_norm(const PlanePoint& z, const Prime& p);

/// |r| * prod_p |r|_p over the primes dividing r's numerator or denominator.
/// Exactly 1 for every nonzero rational; zero is rejected.
Rational product_formula_defect(const Rational& r);

}  // namespace arith_orbit
