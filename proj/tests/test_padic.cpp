#include "support.hpp"

#include "arith_orbit/error.hpp"
#include "arith_orbit/height.hpp"
#include "arith_orbit/padic.hpp"
#include "arith_orbit/piecewise.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace arith_orbit;
using test_support::oracles;
using test_support::pt;
using test_support::q;

namespace {

const Prime two(2UL);
const Prime three(3UL);

AffineMap2 companion(const std::string& T, const std::string& D) {
    return AffineMap2(Matrix2{q(T), -q(D), Rational(1), Rational(0)}, pt("0", "0"));
}

const AffineMap2 linear = companion("3/2", "1");

ValuationTrace trace_of(const AffineMap2& f, const PlanePoint& z0, const Prime& p, std::uint64_t T) {
    AffineOrbit orbit(f, z0);
    return valuation_trace(orbit, p, T);
}

struct SlopeCaseMap {
    const char* T;
    const char* D;
    unsigned long p;
    const char* expected;
};

// Five case-i maps and three case-ii maps with even nu_p(D) < 2 nu_p(T).
const SlopeCaseMap slope_case_maps[] = {
    {"3/2", "1", 2, "1"},  {"5/4", "1/2", 2, "2"}, {"1/3", "2", 3, "1"}, {"7/9", "5/3", 3, "2"},
    {"2", "8", 2, "-1"},   {"4", "4", 2, "-1"},    {"1/2", "1/16", 2, "2"}, {"1", "1/4", 2, "1"},
};

}  // namespace

TEST_SUITE("padic-analysis") {

TEST_CASE("Newton polygon valuations") {
    NewtonPolygonResult r = newton_valuations(0, -1);
    CHECK(r.val_alpha == q("-1"));
    CHECK(r.val_beta == q("1"));
    CHECK(r.slope_case == SlopeCase::distinct_slopes);

    r = newton_valuations(2, 1);
    CHECK(r.val_alpha == q("1"));
    CHECK(r.val_beta == q("1"));
    CHECK(r.slope_case == SlopeCase::single_slope);

    r = newton_valuations(3, 1);
    CHECK(r.val_alpha == q("1"));
    CHECK(r.val_beta == q("2"));
    CHECK(r.slope_case == SlopeCase::distinct_slopes);

    r = newton_valuations(3, ExtendedInt::infinity());
    CHECK(r.val_alpha == q("3/2"));
    CHECK(r.slope_case == SlopeCase::single_slope);
    CHECK_THROWS_AS(newton_valuations(ExtendedInt::infinity(), 0), PreconditionError);
}

TEST_CASE("local height predictions") {
    LocalHeightPrediction h = predict_hp(linear, two);
    CHECK(h.value == q("1"));
    CHECK(h.height_case == HeightCase::i);
    CHECK(h.homogeneous);

    const AffineMap2 island(Matrix2{q("-3/8"), q("5/4"), q("-11/16"), q("-3/8")}, pt("21/8", "21/16"));
    h = predict_hp(island, two);
    CHECK(h.value == q("2"));
    CHECK(h.height_case == HeightCase::i);
    CHECK_FALSE(h.homogeneous);

    h = predict_hp(companion("6", "4"), two);
    CHECK(h.value == q("-1"));
    CHECK(h.height_case == HeightCase::ii);
    CHECK(h.bound_only);  // nu_2(4) = 2 nu_2(6)

    h = predict_hp(q("6"), q("4"), two, false);
    CHECK(h.value == q("0"));  // clamped

    h = predict_hp(q("1"), q("1/8"), two, true);
    CHECK(h.height_case == HeightCase::ii);
    CHECK(h.value == q("3/2"));
    CHECK_FALSE(h.bound_only);
}

TEST_CASE("valuation traces") {
    const ValuationTrace zero = trace_of(linear, pt("0", "0"), two, 5);
    REQUIRE(zero.samples.size() == 6);
    for (const ValuationSample& s : zero.samples) CHECK(s.nu.is_infinite());
    CHECK_THROWS_AS(measured_hp(zero), InfiniteValuationError);

    std::ostringstream csv;
    trace_of(linear, pt("0", "0"), two, 1).write_csv(csv);
    CHECK(csv.str() == "t,nu\n0,inf\n1,inf\n");

    const ValuationTrace tr = trace_of(linear, pt("1", "0"), two, 40);
    const auto& expected = oracles()["linear_trace_1_0"];
    REQUIRE(expected.size() == tr.samples.size());
    for (std::size_t t = 0; t < tr.samples.size(); ++t) {
        CHECK(tr.samples[t].t == t);
        CHECK(tr.samples[t].nu.value() == expected[t].get<std::int64_t>());
    }
    for (std::size_t t = 2; t < 40; ++t) CHECK(tr.samples[t + 1].nu.value() - tr.samples[t].nu.value() == -1);

    AffineOrbit orbit(linear, pt("3", "5"));
    const ValuationTrace xs = valuation_trace(orbit, two, 3, TraceComponent::x);
    CHECK(xs.samples[0].nu == ExtendedInt(0));
    CHECK(xs.samples[1].nu == ExtendedInt(-1));  // x1 = 9/2 - 5 = -1/2
}

TEST_CASE("measured local heights") {
    // Periodic orbit of the rotation.
    const AffineMap2 rot(Matrix2{q("0"), q("-1"), q("1"), q("0")}, pt("0", "0"));
    CHECK(measured_hp(trace_of(rot, pt("3/4", "1"), two, 100)) == 0.0);

    CHECK(measured_hp(trace_of(linear, pt("1", "0"), two, 2000)) == doctest::Approx(1.0).epsilon(0.01));

    const auto& rec = oracles()["orbits"]["island_2_0"];
    const PiecewiseMap f = PiecewiseMap::three_piece();
    PiecewiseOrbit orbit(f, pt("2", "0"));
    const ValuationTrace tr = valuation_trace(orbit, two, 4000);
    const double expected = static_cast<double>(1 - rec["nu_T"].get<std::int64_t>()) / 4000.0;
    CHECK(measured_hp(tr) == expected);
    CHECK(std::fabs(measured_hp(tr) - 0.4) <= 0.02);
    CHECK(orbit.current() == PlanePoint{q(rec["z_T"][0]), q(rec["z_T"][1])});
}

TEST_CASE("lag time") {
    // The step law is nu_{t+1} - nu_t = -h_p, so the expected step is h_p = 1.
    const ValuationTrace tr = trace_of(linear, pt("1", "0"), two, 200);
    const auto tau = lag_time(tr, Rational(1));
    REQUIRE(tau.has_value());
    CHECK(*tau <= 5);

    const ValuationTrace short_trace = trace_of(linear, pt("2", "-1"), two, 2);
    CHECK_FALSE(lag_time(short_trace, Rational(1)).has_value());
    CHECK_FALSE(lag_time(trace_of(linear, pt("1", "0"), two, 0), Rational(1)).has_value());

    const ValuationTrace periodic =
        trace_of(AffineMap2(Matrix2{q("0"), q("-1"), q("1"), q("0")}, pt("0", "0")), pt("1", "2"), two, 50);
    CHECK_FALSE(lag_time(periodic, Rational(1)).has_value());
}

TEST_CASE("Hensel lifting of x^2 - 3x + 4 at p = 2") {
    auto [alpha, beta] = hensel_quadratic_roots(BigInt(3), BigInt(4), two, 3);
    CHECK(alpha.residue == 7);
    CHECK(beta.residue == 4);
    CHECK(beta.valuation == 2);
    CHECK(alpha.valuation == 0);

    auto [alpha1, beta1] = hensel_quadratic_roots(BigInt(3), BigInt(4), two, 1);
    CHECK(alpha1.residue == 1);
    CHECK(beta1.residue == 0);

    const auto& h = oracles()["hensel"];
    auto [a64, b64] = hensel_quadratic_roots(BigInt(3), BigInt(4), two, 64);
    CHECK(a64.residue == BigInt(h["alpha"].get<std::string>()));
    CHECK(b64.residue == BigInt(h["beta"].get<std::string>()));
    CHECK(a64.residue % 8 == h["alpha_mod_8"].get<int>());

    for (unsigned K = 1; K <= 64; ++K) {
        auto [a, b] = hensel_quadratic_roots(BigInt(3), BigInt(4), two, K);
        BigInt m;
        mpz_ui_pow_ui(m.get_mpz_t(), 2, K);
        BigInt sum = a.residue + b.residue - 3, prod = a.residue * b.residue - 4;
        CHECK(mpz_divisible_p(sum.get_mpz_t(), m.get_mpz_t()));
        CHECK(mpz_divisible_p(prod.get_mpz_t(), m.get_mpz_t()));
    }
}

TEST_CASE("Hensel preconditions and unit roots") {
    CHECK_THROWS_AS(hensel_quadratic_roots(BigInt(4), BigInt(4), two, 8), PreconditionError);
    CHECK_THROWS_AS(hensel_quadratic_roots(BigInt(3), BigInt(5), two, 8), PreconditionError);
    CHECK_THROWS_AS(hensel_quadratic_roots(BigInt(3), BigInt(0), two, 8), PreconditionError);
    CHECK_THROWS_AS(hensel_quadratic_roots(BigInt(3), BigInt(4), two, 0), PreconditionError);
    for (long t : {1L, 2L, 4L, 5L, 7L, -11L}) {
        for (long d : {3L, 9L, -6L, 27L}) {
            auto [a, b] = hensel_quadratic_roots(BigInt(t), BigInt(d), three, 20);
            CHECK(a.valuation == 0);
            CHECK(val_p(a.residue, three) == ExtendedInt(0));
            CHECK(b.valuation == val_p(BigInt(d), three).value());
        }
    }
}

TEST_CASE("near-eigenspace points") {
    const Rational eps = pow(Rational(2), -20);
    const PlanePoint z = pt("2", "0");
    std::uint64_t previous_tau = 0;
    BigInt previous_height = 0;
    for (unsigned K : {10U, 20U, 30U, 40U}) {
        const NearEigenspacePoint ne = near_eigenspace_point(linear, two, z, K, eps);
        CHECK(sup_norm(ne.point - z) + padic_norm(ne.point - ne.zeta, two) < eps);
        CHECK(ne.separation >= static_cast<std::int64_t>(K) * 2);

        const ValuationTrace tr = trace_of(linear, ne.point, two, 400);
        const auto tau = lag_time(tr, Rational(1));
        REQUIRE(tau.has_value());
        CHECK(*tau >= previous_tau);
        previous_tau = *tau;
        if (K == 30) CHECK(*tau >= 20);

        const BigInt H = height_pt(ne.point);
        CHECK(H >= previous_height);
        BigInt bound;
        mpz_ui_pow_ui(bound.get_mpz_t(), 2, K / 2);
        CHECK(H > bound);
        previous_height = H;
    }

    const NearEigenspacePoint weak = near_eigenspace_point(linear, two, z, 1, Rational(1));
    CHECK(sup_norm(weak.point - z) + padic_norm(weak.point - weak.zeta, two) < Rational(1));

    const NearEigenspacePoint fine = near_eigenspace_point(linear, two, z, 30, Rational(1, 100000000));
    CHECK(sup_norm(fine.point - z) < Rational(1, 100000000));

    CHECK_THROWS_AS(near_eigenspace_point(companion("4", "4"), two, z, 10, eps), PreconditionError);
    CHECK_THROWS_AS(near_eigenspace_point(linear, two, z, 0, eps), PreconditionError);
}

TEST_CASE("near-eigenspace points with rational eigenvalues and translations") {
    // Roots 2 and 1/2 with nu_2 = 1 and -1; the exact beta-eigenline is avoided.
    const AffineMap2 f(Matrix2{q("5/2"), q("-1"), q("1"), q("0")}, pt("1", "1/3"));
    const NearEigenspacePoint ne = near_eigenspace_point(f, two, pt("5", "-2"), 12, pow(Rational(2), -10));
    const PlanePoint y = ne.point - fixed_point(f);
    const Matrix2 shifted = f.linear() - Rational(2) * Matrix2::identity();
    CHECK_FALSE((shifted * y).is_origin());
    AffineOrbit orbit(f, ne.point);
    const ValuationTrace tr = valuation_trace(orbit, two, 200);
    const auto tau = lag_time(tr, Rational(1));
    REQUIRE(tau.has_value());
    CHECK(*tau >= 6);

    const AffineMap2 diagonal(Matrix2{q("1/2"), q("0"), q("0"), q("3")}, pt("0", "0"));
    const NearEigenspacePoint nd = near_eigenspace_point(diagonal, two, pt("1", "1"), 10, Rational(1, 1000));
    CHECK_FALSE(nd.point.y.is_zero());
    CHECK(nd.separation >= 10);
}

TEST_CASE("non-degeneracy") {
    CHECK_FALSE(nondegenerate(linear, pt("0", "0"), two));
    CHECK(nondegenerate(linear, pt("1", "0"), two));
    // nu(y0) = nu(x0) - 1 and nu(x1) = nu(x0) + 1: both coordinate conditions are equalities.
    CHECK_FALSE(nondegenerate(linear, pt("2", "-1"), two));
    const AffineMap2 shifted(linear.linear(), pt("1", "1"));
    CHECK_FALSE(nondegenerate(shifted, fixed_point(shifted), two));
}

TEST_CASE("case-i slope law and local-height agreement") {
    test_support::RandomRationals rng(7);
    for (const SlopeCaseMap& c : slope_case_maps) {
        const AffineMap2 f = companion(c.T, c.D);
        const Prime p(c.p);
        const LocalHeightPrediction pred = predict_hp(f, p);
        CAPTURE(c.T);
        CAPTURE(c.D);
        CHECK(pred.value == q(c.expected));
        CHECK_FALSE(pred.bound_only);
        int accepted = 0;
        while (accepted < 50) {
            const PlanePoint z0 = rng.point(40);
            if (!nondegenerate(f, z0, p)) continue;
            ++accepted;
            const ValuationTrace tr = trace_of(f, z0, p, 2000);
            CHECK(std::fabs(measured_hp(tr) - pred.value.to_double()) <= 0.01);
            if (pred.height_case == HeightCase::i) {
                const auto tau = lag_time(tr, pred.value);
                CHECK(tau.has_value());
            }
        }
    }
}

}  // TEST_SUITE
