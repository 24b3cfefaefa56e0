#pragma once

#include "arith_orbit/affine.hpp"
#include "arith_orbit/global_height.hpp"
#include "arith_orbit/orbit.hpp"
#include "arith_orbit/padic.hpp"
#include "arith_orbit/prime.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace arith_orbit {

/// One vertical strip Delta x R carrying f(x) = a x + b. A missing bound is
/// -inf (left) or +inf (right); infinite ends are never included.
struct StripPiece {
    std::optional<Rational> left;
    std::optional<Rational> right;
    bool includes_left = false;
    bool includes_right = false;
    Rational a;
    Rational b;

    bool contains(const Rational& x) const;
};

/// (x, y) -> (f(x) - y, d x) with f piecewise affine on a strip partition.
///
/// Piece i acts as the affine map with M_i = [[a_i, -1], [d, 0]] and
/// s_i = (b_i, 0), so every piece has determinant d. The constructor checks
/// that the pieces, in order, partition R exactly: consecutive pieces share
/// their breakpoint and exactly one of them includes it.
class PiecewiseMap {
public:
    PiecewiseMap(std::vector<StripPiece> pieces, Rational d);

    /// f(x) = 3/2 x + 3/2 (x < -1), 0 (-1 <= x <= 1), 3/2 x - 3/2 (x > 1).
    /// Pieces are indexed 0 (left), 1 (center), 2 (right).
    static PiecewiseMap three_piece(Rational d = Rational(1));
    /// f(x) = a1 x (x < 0), a2 x (x >= 0).
    static PiecewiseMap two_slope(Rational a1, Rational a2, Rational d = Rational(1));

    const std::vector<StripPiece>& pieces() const { return pieces_; }
    const Rational& d() const { return d_; }

    /// Index of the unique piece whose interval contains x.
    std::size_t locate(const Rational& x) const;
    AffineMap2 piece_map(std::size_t index) const;

    /// ((a_i x + b_i - y, d x), i) with i = locate(x).
    std::pair<PlanePoint, std::size_t> apply(const PlanePoint& z) const;

    /// In-place step used by long orbits; returns the piece index of the
    /// point before the step. `scratch` avoids reallocating limbs.
    std::size_t step_in_place(PlanePoint& z, mpq_class& scratch) const;

private:
    std::vector<StripPiece> pieces_;
    Rational d_;
};

/// Orbit of a piecewise map that also tracks the symbol of its current point.
class PiecewiseOrbit final : public Orbit {
public:
    PiecewiseOrbit(const PiecewiseMap& map, PlanePoint z0);

    /// Piece index of current().
    std::size_t symbol() const { return symbol_; }

protected:
    void step() override;

private:
    const PiecewiseMap* map_;
    mpq_class scratch_;
    std::size_t symbol_;
};

struct CodePeriod {
    std::size_t preperiod;
    std::size_t period;

    friend bool operator==(const CodePeriod&, const CodePeriod&) = default;
};

/// Forward symbolic code: symbols[t] = i iff x_t lies in piece i.
struct CodeWord {
    std::vector<std::size_t> symbols;
    std::optional<CodePeriod> period;  // nullopt: aperiodic within the window
};

/// Lexicographically smallest (preperiod, period) with
/// symbols[t + period] == symbols[t] for preperiod <= t < window - period.
///
/// The periodic tail must repeat at least twice and cover at least half of
/// the window; anything shorter is reported as aperiodic.
std::optional<CodePeriod> detect_code_period(std::span<const std::size_t> symbols, std::size_t window);

struct OrbitWithCode {
    std::vector<PlanePoint> points;  // z_0 ... z_T
    CodeWord code;                   // T + 1 symbols
};

OrbitWithCode orbit_with_code(const PiecewiseMap& map, const PlanePoint& z0, std::uint64_t T);

/// Composition of the piece maps along `code`, first symbol applied first.
AffineMap2 return_map(const PiecewiseMap& map, std::span<const std::size_t> code);

struct PrimeHeight {
    Prime prime;
    Rational value;
};

struct IslandReport {
    std::size_t period;
    CodeWord code;
    AffineMap2 return_map;
    PlanePoint center;
    Rational jacobian_trace;
    Rational jacobian_det;
    bool finite_order;  // J^k = 1 for some k: every point of the island is periodic
    std::vector<PrimeHeight> predicted_hp;  // per step
    GlobalHeightPrediction predicted_h;     // per step
};

/// Certifies the island of z0 and predicts its per-step heights.
///
/// The code of z0 must be periodic from t = 0 within `window` steps. The
/// return map over one period must have a unique fixed point whose own code
/// repeats the same word; otherwise the candidate is rejected with
/// PreconditionError.
IslandReport island_report(const PiecewiseMap& map, const PlanePoint& z0, std::uint64_t window,
                           const std::vector<Prime>& primes, mpfr_prec_t bits = 128);

/// Prime divisors of the denominators of the slopes a_i and of d.
std::vector<Prime> prime_set(const PiecewiseMap& map);

}  // namespace arith_orbit
