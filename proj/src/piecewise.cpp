#include "arith_orbit/piecewise.hpp"

#include "arith_orbit/error.hpp"
#include "arith_orbit/lucas.hpp"

#include <algorithm>
#include <array>

namespace arith_orbit {

bool StripPiece::contains(const Rational& x) const {
    if (left) {
        const int c = cmp(x.gmp(), left->gmp());
        if (c < 0 || (c == 0 && !includes_left)) return false;
    }
    if (right) {
        const int c = cmp(x.gmp(), right->gmp());
        if (c > 0 || (c == 0 && !includes_right)) return false;
    }
    return true;
}

PiecewiseMap::PiecewiseMap(std::vector<StripPiece> pieces, Rational d) : pieces_(std::move(pieces)), d_(std::move(d)) {
    if (d_.is_zero()) throw ConfigError("determinant parameter d must be nonzero");
    if (pieces_.empty()) throw ConfigError("map needs at least one piece");
    if (pieces_.front().left) throw ConfigError("first piece must extend to -inf");
    if (pieces_.back().right) throw ConfigError("last piece must extend to +inf");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const StripPiece& p = pieces_[i];
        if ((!p.left && p.includes_left) || (!p.right && p.includes_right))
            throw ConfigError("piece " + std::to_string(i) + " includes an infinite endpoint");
        if (p.left && p.right && !(*p.left < *p.right))
            throw ConfigError("piece " + std::to_string(i) + " has left >= right");
        if (i + 1 == pieces_.size()) break;
        const StripPiece& q = pieces_[i + 1];
        if (!p.right || !q.left || *p.right != *q.left)
            throw ConfigError("gap or overlap between pieces " + std::to_string(i) + " and " + std::to_string(i + 1));
        if (p.includes_right == q.includes_left)
            throw ConfigError("breakpoint " + p.right->str() + " must belong to exactly one piece");
    }
}

PiecewiseMap PiecewiseMap::three_piece(Rational d) {
    const Rational slope(3L, 2L);
    std::vector<StripPiece> pieces{
        {std::nullopt, Rational(-1), false, false, slope, slope},
        {Rational(-1), Rational(1), true, true, Rational(0), Rational(0)},
        {Rational(1), std::nullopt, false, false, slope, -slope},
    };
    return PiecewiseMap(std::move(pieces), std::move(d));
}

PiecewiseMap PiecewiseMap::two_slope(Rational a1, Rational a2, Rational d) {
    std::vector<StripPiece> pieces{
        {std::nullopt, Rational(0), false, false, std::move(a1), Rational(0)},
        {Rational(0), std::nullopt, true, false, std::move(a2), Rational(0)},
    };
    return PiecewiseMap(std::move(pieces), std::move(d));
}

std::size_t PiecewiseMap::locate(const Rational& x) const {
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
        if (pieces_[i].contains(x)) return i;
    return pieces_.size() - 1;
}

AffineMap2 PiecewiseMap::piece_map(std::size_t index) const {
    const StripPiece& p = pieces_.at(index);
    return AffineMap2(Matrix2{p.a, Rational(-1), d_, Rational(0)}, PlanePoint{p.b, Rational(0)});
}

std::pair<PlanePoint, std::size_t> PiecewiseMap::apply(const PlanePoint& z) const {
    const std::size_t i = locate(z.x);
    const StripPiece& p = pieces_[i];
    return {PlanePoint{p.a * z.x + p.b - z.y, d_ * z.x}, i};
}

std::size_t PiecewiseMap::step_in_place(PlanePoint& z, mpq_class& scratch) const {
    const std::size_t i = locate(z.x);
    const StripPiece& p = pieces_[i];
    mpq_ptr s = scratch.get_mpq_t();
    mpq_ptr x = z.x.gmp().get_mpq_t();
    mpq_ptr y = z.y.gmp().get_mpq_t();
    mpq_mul(s, p.a.gmp().get_mpq_t(), x);
    mpq_add(s, s, p.b.gmp().get_mpq_t());
    mpq_sub(s, s, y);
    mpq_mul(y, d_.gmp().get_mpq_t(), x);
    mpq_swap(x, s);
    return i;
}

PiecewiseOrbit::PiecewiseOrbit(const PiecewiseMap& map, PlanePoint z0)
    : Orbit(std::move(z0)), map_(&map), symbol_(map.locate(z_.x)) {}

void PiecewiseOrbit::step() {
    map_->step_in_place(z_, scratch_);
    symbol_ = map_->locate(z_.x);
}

std::optional<CodePeriod> detect_code_period(std::span<const std::size_t> symbols, std::size_t window) {
    if (window > symbols.size()) throw PreconditionError("window exceeds code length");
    std::optional<CodePeriod> best;
    for (std::size_t period = 1; 2 * period <= window; ++period) {
        std::size_t pre = 0;
        for (std::size_t t = window - period; t-- > 0;) {
            if (symbols[t] != symbols[t + period]) {
                pre = t + 1;
                break;
            }
        }
        const std::size_t tail = window - pre;
        if (tail < 2 * period || 2 * tail < window) continue;
        if (!best || pre < best->preperiod) best = CodePeriod{pre, period};
        if (pre == 0) break;  // nothing later can beat (0, period)
    }
    return best;
}

OrbitWithCode orbit_with_code(const PiecewiseMap& map, const PlanePoint& z0, std::uint64_t T) {
    OrbitWithCode out;
    out.points.reserve(T + 1);
    out.code.symbols.reserve(T + 1);
    PiecewiseOrbit orbit(map, z0);
    for (std::uint64_t t = 0;; ++t) {
        out.points.push_back(orbit.current());
        out.code.symbols.push_back(orbit.symbol());
        if (t == T) break;
        orbit.advance();
    }
    out.code.period = detect_code_period(out.code.symbols, out.code.symbols.size());
    return out;
}

AffineMap2 return_map(const PiecewiseMap& map, std::span<const std::size_t> code) {
    if (code.empty()) throw PreconditionError("return map needs a nonempty code");
    AffineMap2 acc = map.piece_map(code.front());
    for (std::size_t i = 1; i < code.size(); ++i) acc = map.piece_map(code[i]).after(acc);
    return acc;
}

namespace {

bool has_finite_order(const Matrix2& j) {
    // Elements of finite order in GL(2, Q) have order 1, 2, 3, 4 or 6.
    constexpr std::array<std::int64_t, 5> orders = {1, 2, 3, 4, 6};
    return std::any_of(orders.begin(), orders.end(),
                       [&](std::int64_t k) { return mat_pow_ch(j, k) == Matrix2::identity(); });
}

}  // namespace

IslandReport island_report(const PiecewiseMap& map, const PlanePoint& z0, std::uint64_t window,
                           const std::vector<Prime>& primes, mpfr_prec_t bits) {
    OrbitWithCode orbit = orbit_with_code(map, z0, window);
    if (!orbit.code.period) throw PreconditionError("aperiodic code within window " + std::to_string(window));
    if (orbit.code.period->preperiod != 0)
        throw PreconditionError("code becomes periodic only after " + std::to_string(orbit.code.period->preperiod) +
                                " steps; island analysis needs preperiod 0");
    const std::size_t n = orbit.code.period->period;
    const std::span<const std::size_t> word(orbit.code.symbols.data(), n);

    AffineMap2 ret = return_map(map, word);
    PlanePoint center = fixed_point(ret);

    PiecewiseOrbit check(map, center);
    for (std::size_t t = 0; t < n; ++t) {
        if (check.symbol() != word[t])
            throw PreconditionError("center " + to_string(center) + " does not follow the island code (t=" +
                                    std::to_string(t) + "); candidate not certified");
        check.advance();
    }
    if (check.current() != center) throw PreconditionError("center is not periodic; candidate not certified");

    const auto [T, D] = trace_det(ret.linear());
    std::vector<PrimeHeight> hp;
    const Rational inv_n(1L, static_cast<long>(n));
    for (const Prime& p : primes) hp.push_back({p, predict_hp(ret, p).value * inv_n});

    IslandReport report{n,
                        std::move(orbit.code),
                        ret,
                        std::move(center),
                        T,
                        D,
                        has_finite_order(ret.linear()),
                        std::move(hp),
                        predict_h(ret, bits).divided_by(n)};
    return report;
}

std::vector<Prime> prime_set(const PiecewiseMap& map) {
    std::vector<Prime> out = prime_divisors(map.d().den());
    for (const StripPiece& p : map.pieces())
        for (Prime& q : prime_divisors(p.a.den()))
            if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace arith_orbit
