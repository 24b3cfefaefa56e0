#include "arith_orbit/padic.hpp"

#include "arith_orbit/error.hpp"
#include "arith_orbit/height.hpp"

#include <cstdlib>
#include <ostream>

namespace arith_orbit {

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigInt mod_nonneg(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Residue of a p-adic unit r = n/d modulo m = p^K.
BigInt unit_residue(const Rational& r, const BigInt& m) {
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), r.den().get_mpz_t(), m.get_mpz_t()) == 0)
        throw PreconditionError("denominator " + r.den().get_str() + " is not invertible mod " + m.get_str());
    return mod_nonneg(r.num() * inv, m);
}

// p^e as a rational, e of either sign.
Rational prime_power(const Prime& p, std::int64_t e) {
    return pow(Rational(p.value()), static_cast<long>(e));
}

BigInt hensel_lift(BigInt x, const BigInt& t_prime, const BigInt& d_term, const BigInt& modulus) {
    BigInt fx, dfx, inv;
    // Newton doubles the p-adic precision per step; 80 steps covers any K we can store.
    for (int iter = 0; iter < 80; ++iter) {
        fx = mod_nonneg(x * x - t_prime * x + d_term, modulus);
        if (fx == 0) return x;
        dfx = 2 * x - t_prime;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw PreconditionError("derivative of s(x) is not a unit at the approximate root");
        x = mod_nonneg(x - fx * inv, modulus);
    }
    throw PreconditionError("Hensel lifting did not converge");
}

PlanePoint apply_shifted(const Matrix2& m, const Rational& lambda, const PlanePoint& y) {
    return {(m.m11 - lambda) * y.x + m.m12 * y.y, m.m21 * y.x + (m.m22 - lambda) * y.y};
}

bool is_rational_square(const Rational& r) {
    return r.sign() >= 0 && mpz_perfect_square_p(r.num().get_mpz_t()) && mpz_perfect_square_p(r.den().get_mpz_t());
}

Rational rational_sqrt(const Rational& r) {
    BigInt n, d;
    mpz_sqrt(n.get_mpz_t(), r.num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.den().get_mpz_t());
    return Rational(n, d);
}

}  // namespace

NewtonPolygonResult newton_valuations(const ExtendedInt& u, const ExtendedInt& v) {
    if (u.is_infinite()) throw PreconditionError("nu_p(D) is infinite: singular matrix");
    const Rational uq(static_cast<long>(u.value()));
    if (v.is_finite() && u.value() > 2 * v.value()) {
        const Rational vq(static_cast<long>(v.value()));
        return {vq, uq - vq, SlopeCase::distinct_slopes};
    }
    const Rational half = uq / Rational(2);
    return {half, half, SlopeCase::single_slope};
}

LocalHeightPrediction predict_hp(const Rational& T, const Rational& D, const Prime& p, bool homogeneous) {
    const ExtendedInt u = val_p(D, p);
    const ExtendedInt v = val_p(T, p);
    const NewtonPolygonResult np = newton_valuations(u, v);
    LocalHeightPrediction out{-np.val_alpha, HeightCase::ii, homogeneous, false};
    if (np.slope_case == SlopeCase::distinct_slopes) {
        out.height_case = HeightCase::i;
    } else {
        out.bound_only = v.is_finite() && u.value() == 2 * v.value();
    }
    if (!homogeneous && out.value.sign() < 0) out.value = Rational(0);
    return out;
}

LocalHeightPrediction predict_hp(const AffineMap2& map, const Prime& p) {
    const auto [T, D] = trace_det(map.linear());
    return predict_hp(T, D, p, map.homogeneous());
}

void ValuationTrace::write_csv(std::ostream& os) const {
    os << "t,nu\n";
    for (const ValuationSample& s : samples) os << s.t << ',' << s.nu << '\n';
}

ValuationTrace valuation_trace(Orbit& orbit, const Prime& p, std::uint64_t T_max, TraceComponent component) {
    ValuationTrace trace{p, {}};
    trace.samples.reserve(T_max + 1);
    auto nu = [&](const PlanePoint& z) {
        switch (component) {
            case TraceComponent::x: return val_p(z.x, p);
            case TraceComponent::y: return val_p(z.y, p);
            case TraceComponent::point: break;
        }
        return val_pt(z, p);
    };
    for (std::uint64_t t = 0;; ++t) {
        trace.samples.push_back({t, nu(orbit.current())});
        if (t == T_max) break;
        orbit.advance();
    }
    return trace;
}

double measured_hp(const ValuationTrace& trace) {
    if (trace.samples.size() < 2) throw PreconditionError("height estimate needs at least two samples");
    const ValuationSample& first = trace.samples.front();
    const ValuationSample& last = trace.samples.back();
    if (first.nu.is_infinite() || last.nu.is_infinite())
        throw InfiniteValuationError("orbit endpoint has infinite valuation");
    const double span = static_cast<double>(last.t - first.t);
    return static_cast<double>(first.nu.value() - last.nu.value()) / span;
}

std::optional<std::uint64_t> lag_time(const ValuationTrace& trace, const Rational& expected_step) {
    const auto& s = trace.samples;
    if (s.size() < 2) return std::nullopt;
    const Rational wanted = -expected_step;
    std::size_t start = 0;
    for (std::size_t i = s.size() - 1; i-- > 0;) {
        const bool ok = s[i].nu.is_finite() && s[i + 1].nu.is_finite() &&
                        Rational(static_cast<long>(s[i + 1].nu.value() - s[i].nu.value())) == wanted;
        if (!ok) {
            start = i + 1;
            break;
        }
    }
    if (start + 1 >= s.size()) return std::nullopt;
    return s[start].t;
}

std::pair<HenselRoot, HenselRoot> hensel_quadratic_roots(const BigInt& t_prime, const BigInt& d_term,
                                                         const Prime& p, unsigned K) {
    if (K == 0) throw PreconditionError("Hensel precision must be positive");
    if (mpz_divisible_p(t_prime.get_mpz_t(), p.value().get_mpz_t()))
        throw PreconditionError("T' must be a p-adic unit");
    if (d_term == 0) throw PreconditionError("constant term must be nonzero");
    if (!mpz_divisible_p(d_term.get_mpz_t(), p.value().get_mpz_t()))
        throw PreconditionError("constant term must be divisible by p");

    const BigInt modulus = pow_big(p.value(), K);
    const BigInt tp = mod_nonneg(t_prime, modulus);
    const BigInt dt = mod_nonneg(d_term, modulus);

    HenselRoot alpha{hensel_lift(mod_nonneg(tp, p.value()), tp, dt, modulus), K, 0};
    HenselRoot beta{hensel_lift(BigInt(0), tp, dt, modulus), K, val_p(d_term, p).value()};
    return {std::move(alpha), std::move(beta)};
}

NearEigenspacePoint near_eigenspace_point(const AffineMap2& map, const Prime& p, const PlanePoint& z, unsigned K,
                                          const Rational& eps) {
    if (K == 0) throw PreconditionError("K too small to separate the eigenlines");
    if (eps.sign() <= 0) throw PreconditionError("eps must be positive");
    const Matrix2& m = map.linear();
    const auto [T, D] = trace_det(m);
    const ExtendedInt u = val_p(D, p);
    const ExtendedInt v = val_p(T, p);
    if (newton_valuations(u, v).slope_case != SlopeCase::distinct_slopes)
        throw PreconditionError("eigenvalues have equal p-adic size (case ii): no distinguished eigenline");

    const std::int64_t gap = u.value() - 2 * v.value();
    const std::int64_t target = static_cast<std::int64_t>(K) * gap;
    const PlanePoint zs = fixed_point(map);

    // Approximant of beta and a unit-norm beta-eigenvector zeta_lin; its error
    // valuation is pushed at least 32 past the separation target.
    Rational beta_hat;
    PlanePoint zeta_lin;
    std::int64_t beta_accuracy = 0;  // lower bound on nu_p(beta - beta_hat)
    bool exact = false;
    unsigned precision = 0;
    if (m.m12.is_zero() && m.m21.is_zero()) {
        exact = true;
        const bool beta_is_first = val_p(m.m11, p) > val_p(m.m22, p);
        beta_hat = beta_is_first ? m.m11 : m.m22;
        zeta_lin = beta_is_first ? PlanePoint{Rational(1), Rational(0)} : PlanePoint{Rational(0), Rational(1)};
    } else {
        const Rational t_unit = T / prime_power(p, v.value());
        const Rational d_unit = D / prime_power(p, u.value());
        precision = static_cast<unsigned>(target + 32 + 2 * std::llabs(v.value()));
        for (;;) {
            const BigInt modulus = pow_big(p.value(), precision);
            const BigInt d_term = mod_nonneg(unit_residue(d_unit, modulus) * pow_big(p.value(), gap), modulus);
            const auto roots = hensel_quadratic_roots(unit_residue(t_unit, modulus), d_term, p, precision);
            BigInt r = roots.second.residue;
            if (2 * r > modulus) r -= modulus;  // balanced representative keeps heights smaller
            beta_hat = prime_power(p, v.value()) * Rational(r);
            PlanePoint w = m.m12.is_zero() ? PlanePoint{beta_hat - m.m22, m.m21} : PlanePoint{m.m12, beta_hat - m.m11};
            const std::int64_t nu_w = val_pt(w, p).value();
            zeta_lin = prime_power(p, -nu_w) * w;
            beta_accuracy = static_cast<std::int64_t>(precision) + v.value();
            const std::int64_t zeta_accuracy = beta_accuracy - nu_w;
            if (zeta_accuracy >= target + 32) break;
            precision += static_cast<unsigned>(target + 32 - zeta_accuracy);
        }
    }
    const Rational alpha_hat = T - beta_hat;

    const Rational disc = T * T - Rational(4) * D;
    std::optional<Rational> beta_exact;
    if (exact) {
        beta_exact = beta_hat;
    } else if (is_rational_square(disc)) {
        const Rational root = rational_sqrt(disc);
        const Rational r1 = (T + root) / Rational(2);
        const Rational r2 = (T - root) / Rational(2);
        beta_exact = val_p(r1, p) > val_p(r2, p) ? r1 : r2;
    }

    const PlanePoint zeta = zs + zeta_lin;
    const Rational one(1);
    BigInt pk = p.value();
    for (unsigned k = 1; k < 1000000; ++k, pk *= p.value()) {
        const Rational r = one / (one + Rational(pk));
        const PlanePoint candidate = z + r * (zeta - z);
        const PlanePoint y = candidate - zs;
        if (y.is_origin()) continue;
        if (sup_norm(candidate - z) + padic_norm(candidate - zeta, p) >= eps) continue;
        if (beta_exact && apply_shifted(m, *beta_exact, y).is_origin()) continue;

        // (M - beta) y isolates the alpha-component and (M - alpha) y the beta-component.
        // With an approximate beta the former is only known up to nu(beta - beta_hat) + nu(y).
        const ExtendedInt nu_beta_part = val_pt(apply_shifted(m, alpha_hat, y), p);
        ExtendedInt nu_alpha_part = val_pt(apply_shifted(m, beta_hat, y), p);
        if (!exact) nu_alpha_part = min(nu_alpha_part, beta_accuracy + val_pt(y, p));
        if (nu_beta_part.is_infinite() || nu_alpha_part.is_infinite()) continue;
        const std::int64_t separation = nu_alpha_part.value() - nu_beta_part.value();
        if (separation < target) continue;
        return {candidate, zeta, k, precision, separation};
    }
    throw PreconditionError("no admissible k found for the near-eigenspace construction");
}

bool nondegenerate(const AffineMap2& map, const PlanePoint& z0, const Prime& p) {
    const PlanePoint zs = fixed_point(map);
    const PlanePoint z0p = z0 - zs;
    if (z0p.is_origin()) return false;
    const PlanePoint z1p = map.linear() * z0p;
    const auto [T, D] = trace_det(map.linear());
    const ExtendedInt u = val_p(D, p);
    const ExtendedInt v = val_p(T, p);
    const bool case_i = newton_valuations(u, v).slope_case == SlopeCase::distinct_slopes;

    auto coordinate_ok = [&](const Rational& c0, const Rational& c1) {
        if (c0.is_zero() && c1.is_zero()) return false;
        const ExtendedInt n0 = val_p(c0, p);
        const ExtendedInt n1 = val_p(c1, p);
        if (case_i) return n1 + v != n0 + u;
        // Case ii: the odd-t and even-t conditions must fail to meet nu_p((t-1)/2)
        // and nu_p(t/2), which run through every non-negative integer.
        if (v.is_infinite() || c0.is_zero() || c1.is_zero()) return true;
        const std::int64_t lhs_odd = n1.value() - n0.value() - v.value();
        const std::int64_t lhs_even = n0.value() + u.value() - n1.value() - v.value();
        return lhs_odd < 0 && lhs_even < 0;
    };
    return coordinate_ok(z0p.x, z1p.x) || coordinate_ok(z0p.y, z1p.y);
}

}  // namespace arith_orbit
