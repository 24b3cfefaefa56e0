#include "arith_orbit/lucas.hpp"

#include "arith_orbit/error.hpp"

namespace arith_orbit {

Rational lucas_u(std::uint64_t t, const Rational& T, const Rational& D) {
    return lucas_pair(static_cast<std::int64_t>(t), T, D).current;
}

Rational lucas_u_closed(std::uint64_t t, const Rational& T, const Rational& D) {
    if (t == 0) throw PreconditionError("closed form of U_t needs t >= 1");
    const Rational minus_d = -D;
    Rational sum(0);
    BigInt binom;
    for (std::uint64_t k = 0; 2 * k <= t - 1; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), t - k - 1, k);
        sum += Rational(binom) * pow(T, static_cast<long>(t - 2 * k - 1)) * pow(minus_d, static_cast<long>(k));
    }
    return sum;
}

LucasPair lucas_pair(std::int64_t t, const Rational& T, const Rational& D) {
    // (U_{-1}, U_0) = (-1/D, 0) when D != 0; forward runs start at (U_0, U_1).
    if (t >= 1) {
        Rational prev(0), cur(1);
        for (std::int64_t i = 1; i < t; ++i) {
            Rational next = T * cur - D * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        return {prev, cur};
    }
    if (D.is_zero()) {
        if (t == 0) return {Rational(0), Rational(0)};  // U_{-1} unused when D = 0
        throw PreconditionError("negative Lucas index needs D != 0");
    }
    // U_{k-1} = (T U_k - U_{k+1}) / D.
    Rational next(1), cur(0);
    for (std::int64_t i = 0; i >= t; --i) {
        Rational prev = (T * cur - next) / D;
        next = std::move(cur);
        cur = std::move(prev);
    }
    return {cur, next};
}

Matrix2 mat_pow_ch(const Matrix2& m, std::int64_t t) {
    if (t == 0) return Matrix2::identity();
    const auto [T, D] = trace_det(m);
    if (t < 0 && D.is_zero()) throw PreconditionError("negative power of a singular matrix");
    const LucasPair u = lucas_pair(t, T, D);
    return u.current * m - (D * u.previous) * Matrix2::identity();
}

PlanePoint orbit_closed_form(const AffineMap2& map, const PlanePoint& z0, std::uint64_t t) {
    const PlanePoint zs = fixed_point(map);
    if (t == 0) return z0;
    const auto [T, D] = trace_det(map.linear());
    const PlanePoint z0p = z0 - zs;
    const PlanePoint z1p = map.linear() * z0p;
    const LucasPair u = lucas_pair(static_cast<std::int64_t>(t), T, D);
    return u.current * z1p - (D * u.previous) * z0p + zs;
}

}  // namespace arith_orbit
