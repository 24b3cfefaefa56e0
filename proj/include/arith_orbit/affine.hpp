#pragma once

#include "arith_orbit/rational.hpp"

#include <cstdint>
#include <iosfwd>

namespace arith_orbit {

/// 2x2 rational matrix [[m11, m12], [m21, m22]].
struct Matrix2 {
    Rational m11{1}, m12{0}, m21{0}, m22{1};

    static Matrix2 identity() { return {}; }

    Rational trace() const { return m11 + m22; }
    Rational det() const { return m11 * m22 - m12 * m21; }
    /// Throws PreconditionError when singular.
    Matrix2 inverse() const;

    friend bool operator==(const Matrix2&, const Matrix2&) = default;
    friend Matrix2 operator*(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator+(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator-(const Matrix2& a, const Matrix2& b);
    friend Matrix2 operator*(const Rational& s, const Matrix2& a);
    friend PlanePoint operator*(const Matrix2& a, const PlanePoint& z);
};

std::ostream& operator<<(std::ostream& os, const Matrix2& m);

struct TraceDet {
    Rational trace;
    Rational det;
};

/// (T, D) = (m11 + m22, m11 m22 - m12 m21).
TraceDet trace_det(const Matrix2& m);

/// z -> M z + s with M nonsingular.
class AffineMap2 {
public:
    /// Throws PreconditionError when det(linear) == 0.
    AffineMap2(Matrix2 linear, PlanePoint translation);
    explicit AffineMap2(Matrix2 linear) : AffineMap2(std::move(linear), PlanePoint{}) {}

    const Matrix2& linear() const { return linear_; }
    const PlanePoint& translation() const { return translation_; }
    bool homogeneous() const { return translation_.is_origin(); }

    PlanePoint operator()(const PlanePoint& z) const { return linear_ * z + translation_; }

    /// Applies `this` after `first`: z -> this(first(z)).
    AffineMap2 after(const AffineMap2& first) const;

    friend bool operator==(const AffineMap2&, const AffineMap2&) = default;

private:
    Matrix2 linear_;
    PlanePoint translation_;
};

/// The unique fixed point z* = -(M - 1)^{-1} s. Throws PreconditionError when
/// 1 is an eigenvalue of M (fixed point not unique or absent).
PlanePoint fixed_point(const AffineMap2& map);

/// F^t(z0) by t direct applications.
PlanePoint iterate(const AffineMap2& map, const PlanePoint& z0, std::uint64_t t);

}  // namespace arith_orbit
