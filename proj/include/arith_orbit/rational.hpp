#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace arith_orbit {

using BigInt = mpz_class;

/// Reduced fraction with positive denominator; zero is 0/1.
///
/// Backed by GMP's mpq_t, which keeps the canonical form after every
/// arithmetic operation. Parsing and printing use the "m/n" form ("m" when
/// n = 1), which is the format used by every config and CSV file.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    Rational(int v) : q_(static_cast<long>(v)) {}  // NOLINT
    explicit Rational(const BigInt& v) : q_(v) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den);
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts `-?[0-9]+(/[1-9][0-9]*)?`; the result is reduced.
    static Rational parse(std::string_view text);
    std::string str() const;

    const BigInt& num() const { return q_.get_num(); }
    const BigInt& den() const { return q_.get_den(); }
    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    const mpq_class& gmp() const { return q_; }
    mpq_class& gmp() { return q_; }

    double to_double() const { return q_.get_d(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_{0};
};

Rational abs(const Rational& r);
/// Exact integer power; negative exponents require r != 0.
Rational pow(const Rational& r, long e);

std::ostream& operator<<(std::ostream& os, const Rational& r);

struct PlanePoint {
    Rational x;
    Rational y;

    bool is_origin() const { return x.is_zero() && y.is_zero(); }

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
    friend PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) { return {a.x + b.x, a.y + b.y}; }
    friend PlanePoint operator-(const PlanePoint& a, const PlanePoint& b) { return {a.x - b.x, a.y - b.y}; }
    friend PlanePoint operator*(const Rational& s, const PlanePoint& z) { return {s * z.x, s * z.y}; }
};

/// Parses "x,y" with both components in rational string form.
PlanePoint parse_point(std::string_view text);
std::string to_string(const PlanePoint& z);
std::ostream& operator<<(std::ostream& os, const PlanePoint& z);

/// Archimedean max-norm max(|x|, |y|).
Rational sup_norm(const PlanePoint& z);

/// Either a finite integer or +inf. Valuations of zero are the only source of +inf.
class ExtendedInt {
public:
    constexpr ExtendedInt() = default;
    constexpr ExtendedInt(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    static constexpr ExtendedInt infinity() { ExtendedInt e; e.infinite_ = true; return e; }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    /// Throws PreconditionError when infinite; never coerces +inf to a number.
    std::int64_t value() const;

    std::string str() const;  // decimal or "inf"

    friend constexpr bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
        return a.value_ <=> b.value_;
    }
    friend constexpr ExtendedInt operator+(const ExtendedInt& a, const ExtendedInt& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return a.value_ + b.value_;
    }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

constexpr ExtendedInt min(const ExtendedInt& a, const ExtendedInt& b) { return b < a ? b : a; }
constexpr ExtendedInt max(const ExtendedInt& a, const ExtendedInt& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExtendedInt& e);

}  // namespace arith_orbit
