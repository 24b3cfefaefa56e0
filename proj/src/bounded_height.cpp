#include "arith_orbit/bounded_height.hpp"

#include "arith_orbit/error.hpp"

#include <algorithm>
#include <numeric>

namespace arith_orbit {

std::vector<Rational> bounded_height_rationals(std::uint32_t N) {
    if (N == 0) throw PreconditionError("height bound must be positive");

    // Reduced fractions in (0, 1), then 0 and 1.
    std::vector<Rational> unit;
    for (std::uint32_t n = 2; n <= N; ++n)
        for (std::uint32_t m = 1; m < n; ++m)
            if (std::gcd(m, n) == 1) unit.emplace_back(static_cast<long>(m), static_cast<long>(n));

    std::vector<Rational> out;
    out.reserve(4 * unit.size() + 3);
    out.emplace_back(0);
    out.emplace_back(1);
    out.emplace_back(-1);
    for (const Rational& r : unit) {
        Rational inv(r.den(), r.num());
        out.push_back(r);
        out.push_back(-r);
        out.push_back(inv);
        out.push_back(-inv);
    }
    std::sort(out.begin(), out.end());
    return out;
}

BoundedHeightSet::BoundedHeightSet(std::uint32_t N) : bound_(N), coords_(bounded_height_rationals(N)) {}

PlanePoint BoundedHeightSet::operator[](std::uint64_t index) const {
    if (index >= size()) throw PreconditionError("index outside B_N");
    const std::uint64_t k = coords_.size();
    return {coords_[index / k], coords_[index % k]};
}

BoundedHeightSet enumerate_bounded(std::uint32_t N) {
    return BoundedHeightSet(N);
}

double density_estimate(const PointPredicate& in_set, const PointPredicate& in_ambient, std::uint32_t N) {
    const BoundedHeightSet points(N);
    std::uint64_t hits = 0;
    std::uint64_t ambient = 0;
    PlanePoint z;  // reused so GMP limbs are not reallocated per point
    points.for_each([&](const Rational& x, const Rational& y) {
        z.x = x;
        z.y = y;
        if (!in_ambient(z)) return;
        ++ambient;
        if (in_set(z)) ++hits;
    });
    if (ambient == 0) throw PreconditionError("ambient set has no point of height <= N");
    return static_cast<double>(hits) / static_cast<double>(ambient);
}

}  // namespace arith_orbit
