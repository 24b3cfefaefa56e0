#include "arith_orbit/global_height.hpp"

#include "arith_orbit/error.hpp"
#include "arith_orbit/height.hpp"

#include <algorithm>

namespace arith_orbit {

namespace {

std::vector<Prime> denominator_primes(const Rational& T, const Rational& D) {
    std::vector<Prime> all = prime_divisors(T.den());
    for (Prime& p : prime_divisors(D.den()))
        if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(std::move(p));
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace

PrimeFamilies prime_families(const Rational& T, const Rational& D) {
    PrimeFamilies out;
    for (const Prime& p : denominator_primes(T, D)) {
        const std::int64_t nt = val_p(T.den(), p).value();
        const std::int64_t nd = val_p(D.den(), p).value();
        if (nd < 2 * nt)
            out.p1.push_back(p);
        else if (nd != 0)
            out.p2.push_back(p);
    }
    return out;
}

std::vector<LogTerm> h_star_terms(const Rational& T, const Rational& D) {
    const PrimeFamilies fam = prime_families(T, D);
    std::vector<LogTerm> terms;
    for (const Prime& p : fam.p1) terms.push_back({p, Rational(static_cast<long>(val_p(T.den(), p).value()))});
    for (const Prime& p : fam.p2) terms.push_back({p, Rational(static_cast<long>(val_p(D.den(), p).value()), 2L)});
    std::sort(terms.begin(), terms.end(), [](const LogTerm& a, const LogTerm& b) { return a.prime < b.prime; });
    return terms;
}

BigFloat evaluate(const std::vector<LogTerm>& terms, mpfr_prec_t bits) {
    BigFloat acc(bits);
    for (const LogTerm& term : terms) {
        BigFloat l = BigFloat::log(Rational(term.prime.value()), bits);
        l *= term.coefficient;
        acc += l;
    }
    return acc;
}

double h_star(const Rational& T, const Rational& D, mpfr_prec_t bits) {
    return evaluate(h_star_terms(T, D), bits).to_double();
}

BigFloat spectral_log_radius(const Rational& T, const Rational& D, mpfr_prec_t bits) {
    const Rational disc = T * T - Rational(4) * D;
    if (disc.sign() < 0) {
        // Complex pair: |alpha|^2 = D, and D > T^2 / 4 > 0 here.
        BigFloat out = BigFloat::log(D, bits);
        mpfr_div_2ui(out.get(), out.get(), 1, MPFR_RNDN);
        return out;
    }
    if (T.is_zero() && D.is_zero()) throw PreconditionError("both eigenvalues are zero");
    const mpfr_prec_t work = bits + 32;
    BigFloat root(disc, work);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    BigFloat alpha(abs(T), work);
    mpfr_add(alpha.get(), alpha.get(), root.get(), MPFR_RNDN);
    mpfr_div_2ui(alpha.get(), alpha.get(), 1, MPFR_RNDN);
    mpfr_log(alpha.get(), alpha.get(), MPFR_RNDN);
    mpfr_prec_round(alpha.get(), bits, MPFR_RNDN);
    return alpha;
}

GlobalHeightPrediction GlobalHeightPrediction::divided_by(std::uint64_t n) const {
    if (n == 0) throw PreconditionError("period must be positive");
    const Rational inv(1L, static_cast<long>(n));
    GlobalHeightPrediction out = *this;
    for (LogTerm& term : out.h_star_terms) term.coefficient *= inv;
    out.h_star *= inv;
    out.log_alpha *= inv;
    out.value *= inv;
    return out;
}

GlobalHeightPrediction predict_h(const Rational& T, const Rational& D, mpfr_prec_t bits) {
    std::vector<LogTerm> terms = h_star_terms(T, D);
    BigFloat hs = evaluate(terms, bits);
    BigFloat la = spectral_log_radius(T, D, bits);
    BigFloat value(bits);
    if (mpfr_sgn(la.get()) > 0) mpfr_set(value.get(), la.get(), MPFR_RNDN);
    value += hs;
    return {std::move(terms), std::move(hs), std::move(la), std::move(value), bits};
}

GlobalHeightPrediction predict_h(const AffineMap2& map, mpfr_prec_t bits) {
    const auto [T, D] = trace_det(map.linear());
    return predict_h(T, D, bits);
}

double measured_h(Orbit& orbit, std::uint64_t T_max) {
    if (T_max == 0) throw PreconditionError("horizon must be positive");
    orbit.advance(T_max);
    return log_big(height_pt(orbit.current())) / static_cast<double>(T_max);
}

}  // namespace arith_orbit
