#pragma once

#include "arith_orbit/affine.hpp"

#include <cstdint>

namespace arith_orbit {

// Powers of a 2x2 matrix through the Lucas sequence of its characteristic
// polynomial x^2 - T x + D. By Cayley-Hamilton,
//     M^t = U_t M - D U_{t-1} 1,
// with U_0 = 0, U_1 = 1, U_{t+1} = T U_t - D U_{t-1}. The same relation
// holds for negative t when D != 0, running the recursion backwards.
//
// The companion matrix [[T, -D], [1, 0]] is conjugate to any M that is not a
// scalar multiple of the identity; nothing here depends on that fact.

/// U_t(T, D) by the linear recursion (t >= 0).
Rational lucas_u(std::uint64_t t, const Rational& T, const Rational& D);

/// U_t(T, D) = sum_k binom(t-k-1, k) T^(t-2k-1) (-D)^k for t >= 1.
Rational lucas_u_closed(std::uint64_t t, const Rational& T, const Rational& D);

/// The pair (U_{t-1}, U_t) for any integer t; negative t requires D != 0.
struct LucasPair {
    Rational previous;
    Rational current;
};
LucasPair lucas_pair(std::int64_t t, const Rational& T, const Rational& D);

/// M^t via Cayley-Hamilton with O(|t|) rational operations.
/// Negative t requires det(M) != 0.
Matrix2 mat_pow_ch(const Matrix2& m, std::int64_t t);

/// z_t = U_t z'_1 - D U_{t-1} z'_0 + z*, with z'_0 = z0 - z* and z'_1 = M z'_0.
/// Throws PreconditionError when the fixed point is not unique.
PlanePoint orbit_closed_form(const AffineMap2& map, const PlanePoint& z0, std::uint64_t t);

}  // namespace arith_orbit
