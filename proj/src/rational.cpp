#include "arith_orbit/rational.hpp"

#include "arith_orbit/error.hpp"

#include <ostream>

namespace arith_orbit {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::parse(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    std::string_view num_part = body;
    std::string_view den_part;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        num_part = body.substr(0, slash);
        den_part = body.substr(slash + 1);
        if (!all_digits(den_part) || den_part.front() == '0')
            throw ConfigError("malformed rational: '" + std::string(text) + "'");
    }
    if (!all_digits(num_part)) throw ConfigError("malformed rational: '" + std::string(text) + "'");

    BigInt num(std::string(num_part), 10);
    if (negative) num = -num;
    BigInt den = den_part.empty() ? BigInt(1) : BigInt(std::string(den_part), 10);
    return Rational(num, den);
}

std::string Rational::str() const {
    return q_.get_str(10);
}

Rational abs(const Rational& r) {
    return r.sign() < 0 ? -r : r;
}

Rational pow(const Rational& r, long e) {
    if (e < 0) {
        if (r.is_zero()) throw PreconditionError("negative power of zero");
        return Rational(1) / pow(r, -e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

PlanePoint parse_point(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
        throw ConfigError("expected point as 'x,y': '" + std::string(text) + "'");
    return {Rational::parse(text.substr(0, comma)), Rational::parse(text.substr(comma + 1))};
}

std::string to_string(const PlanePoint& z) {
    return z.x.str() + "," + z.y.str();
}

std::ostream& operator<<(std::ostream& os, const PlanePoint& z) {
    return os << '(' << z.x << ", " << z.y << ')';
}

Rational sup_norm(const PlanePoint& z) {
    return std::max(abs(z.x), abs(z.y));
}

std::int64_t ExtendedInt::value() const {
    if (infinite_) throw PreconditionError("infinite valuation has no integer value");
    return value_;
}

std::string ExtendedInt::str() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, const ExtendedInt& e) {
    return os << e.str();
}

}  // namespace arith_orbit
