#include "arith_orbit/bigfloat.hpp"

#include "arith_orbit/error.hpp"

#include <vector>

namespace arith_orbit {

BigFloat::BigFloat(mpfr_prec_t bits) : owns_(true) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const Rational& r, mpfr_prec_t bits) : owns_(true) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, r.gmp().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : owns_(true) {
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : owns_(other.owns_) {
    // mpfr_t is a one-element array of a plain struct; moving steals the limbs.
    value_[0] = other.value_[0];
    other.owns_ = false;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        if (owns_) {
            mpfr_set_prec(value_, other.precision());
        } else {
            mpfr_init2(value_, other.precision());
            owns_ = true;
        }
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) {
        if (owns_) mpfr_clear(value_);
        value_[0] = other.value_[0];
        owns_ = other.owns_;
        other.owns_ = false;
    }
    return *this;
}

BigFloat::~BigFloat() {
    if (owns_) mpfr_clear(value_);
}

std::string BigFloat::to_string(int significant_digits) const {
    int n = mpfr_snprintf(nullptr, 0, "%.*Rg", significant_digits, value_);
    std::vector<char> buf(static_cast<std::size_t>(n) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, value_);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

BigFloat BigFloat::log(const Rational& r, mpfr_prec_t bits) {
    if (r.sign() <= 0) throw PreconditionError("log of non-positive rational");
    BigFloat out(r, bits + 16);
    mpfr_log(out.value_, out.value_, MPFR_RNDN);
    mpfr_prec_round(out.value_, bits, MPFR_RNDN);
    return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
    mpfr_add(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const Rational& r) {
    mpfr_mul_q(value_, value_, r.gmp().get_mpq_t(), MPFR_RNDN);
    return *this;
}

}  // namespace arith_orbit
