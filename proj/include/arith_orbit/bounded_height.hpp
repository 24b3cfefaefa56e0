#pragma once

#include "arith_orbit/rational.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace arith_orbit {

/// Rationals of height <= N in increasing numeric order.
///
/// Built from the Farey fractions m/n in [0, 1] with n <= N, closed under
/// inversion and negation. There are 3 + 4 * sum_{k=2}^{N} phi(k) of them.
std::vector<Rational> bounded_height_rationals(std::uint32_t N);

/// The set B_N of plane points with H(z) <= N, as the product of the
/// per-coordinate list with itself.
///
/// Iteration order is lexicographic in (x, y) under the usual order on Q.
/// Memory is O(N^2) rationals for the coordinate list; the N^4 points
/// themselves are never materialized.
class BoundedHeightSet {
public:
    explicit BoundedHeightSet(std::uint32_t N);

    std::uint32_t bound() const { return bound_; }
    std::span<const Rational> coordinates() const { return coords_; }
    std::uint64_t size() const { return static_cast<std::uint64_t>(coords_.size()) * coords_.size(); }

    /// The point at position `index` in iteration order.
    PlanePoint operator[](std::uint64_t index) const;

    /// Visits every point once, in iteration order.
    template <class Visitor>
    void for_each(Visitor&& visit) const {
        for (const Rational& x : coords_)
            for (const Rational& y : coords_) visit(x, y);
    }

private:
    std::uint32_t bound_;
    std::vector<Rational> coords_;
};

/// enumerate_bounded(N): B_N with N >= 1.
BoundedHeightSet enumerate_bounded(std::uint32_t N);

using PointPredicate = std::function<bool(const PlanePoint&)>;

/// #(A and B_N) / #(X and B_N): the finite-N approximant of the density of A
/// in the ambient set X. Throws when X contains no point of B_N.
double density_estimate(const PointPredicate& in_set, const PointPredicate& in_ambient, std::uint32_t N);

}  // namespace arith_orbit
