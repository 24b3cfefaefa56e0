#include "arith_orbit/height.hpp"

#include "arith_orbit/error.hpp"

#include <cmath>

namespace arith_orbit {

BigInt height_q(const Rational& r) {
    BigInt n = abs(r.num());
    return n > r.den() ? n : r.den();
}

BigInt height_pt(const PlanePoint& z) {
    BigInt hx = height_q(z.x);
    BigInt hy = height_q(z.y);
    return hx > hy ? hx : hy;
}

double log_big(const BigInt& n) {
    if (n <= 0) throw PreconditionError("log of non-positive integer");
    long exp = 0;
    double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

ExtendedInt val_p(const BigInt& n, const Prime& p) {
    if (n == 0) return ExtendedInt::infinity();
    if (p.value() == 2) return static_cast<std::int64_t>(mpz_scan1(n.get_mpz_t(), 0));
    BigInt rest;
    return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.value().get_mpz_t()));
}

ExtendedInt val_p(const Rational& r, const Prime& p) {
    if (r.is_zero()) return ExtendedInt::infinity();
    // Reduced form: p divides at most one of numerator and denominator.
    ExtendedInt vn = val_p(r.num(), p);
    if (vn.value() != 0) return vn;
    return -val_p(r.den(), p).value();
}

ExtendedInt val_pt(const PlanePoint& z, const Prime& p) {
    return min(val_p(z.x, p), val_p(z.y, p));
}

Rational padic_abs(const Rational& r, const Prime& p) {
    if (r.is_zero()) return Rational(0);
    return pow(Rational(p.value()), -val_p(r, p).value());
}

Rational padic_norm(const PlanePoint& z, const Prime& p) {
    return std::max(padic_abs(z.x, p), padic_abs(z.y, p));
}

Rational product_formula_defect(const Rational& r) {
    if (r.is_zero()) throw PreconditionError("product formula is undefined at zero");
    Rational acc = abs(r);
    for (const Prime& p : prime_divisors(r.num())) acc *= padic_abs(r, p);
    for (const Prime& p : prime_divisors(r.den())) acc *= padic_abs(r, p);
    return acc;
}

}  // namespace arith_orbit
