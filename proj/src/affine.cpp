#include "arith_orbit/affine.hpp"

#include "arith_orbit/error.hpp"

#include <ostream>

namespace arith_orbit {

Matrix2 Matrix2::inverse() const {
    Rational d = det();
    if (d.is_zero()) throw PreconditionError("singular matrix has no inverse");
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Matrix2 operator+(const Matrix2& a, const Matrix2& b) {
    return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

Matrix2 operator*(const Rational& s, const Matrix2& a) {
    return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
}

PlanePoint operator*(const Matrix2& a, const PlanePoint& z) {
    return {a.m11 * z.x + a.m12 * z.y, a.m21 * z.x + a.m22 * z.y};
}

std::ostream& operator<<(std::ostream& os, const Matrix2& m) {
    return os << "[[" << m.m11 << ", " << m.m12 << "], [" << m.m21 << ", " << m.m22 << "]]";
}

TraceDet trace_det(const Matrix2& m) {
    return {m.trace(), m.det()};
}

AffineMap2::AffineMap2(Matrix2 linear, PlanePoint translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (linear_.det().is_zero()) throw PreconditionError("affine map with singular linear part");
}

AffineMap2 AffineMap2::after(const AffineMap2& first) const {
    return AffineMap2(linear_ * first.linear_, linear_ * first.translation_ + translation_);
}

PlanePoint fixed_point(const AffineMap2& map) {
    Matrix2 shifted = map.linear() - Matrix2::identity();
    if (shifted.det().is_zero())
        throw PreconditionError("fixed point not unique/absent: 1 is an eigenvalue of the linear part");
    PlanePoint z = shifted.inverse() * map.translation();
    return {-z.x, -z.y};
}

PlanePoint iterate(const AffineMap2& map, const PlanePoint& z0, std::uint64_t t) {
    PlanePoint z = z0;
    for (std::uint64_t i = 0; i < t; ++i) z = map(z);
    return z;
}

}  // namespace arith_orbit
