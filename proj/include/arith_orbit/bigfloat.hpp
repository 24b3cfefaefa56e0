#pragma once

#include "arith_orbit/rational.hpp"

#include <mpfr.h>

#include <string>

namespace arith_orbit {

/// Owning handle for an MPFR float with a fixed working precision.
/// All arithmetic is correctly rounded to nearest.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 128);
    BigFloat(const Rational& r, mpfr_prec_t bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    /// Decimal in %.{digits}Rg form; stable across runs and platforms.
    std::string to_string(int significant_digits = 12) const;

    static BigFloat log(const Rational& r, mpfr_prec_t bits);

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator*=(const Rational& r);

private:
    mpfr_t value_;
    bool owns_ = false;
};

}  // namespace arith_orbit
