#include "support.hpp"

#include "arith_orbit/error.hpp"
#include "arith_orbit/global_height.hpp"
#include "arith_orbit/height.hpp"
#include "arith_orbit/padic.hpp"

#include <doctest.h>

#include <cmath>

using namespace arith_orbit;
using test_support::oracles;
using test_support::pt;
using test_support::q;

namespace {

AffineMap2 companion(const Rational& T, const Rational& D) {
    return AffineMap2(Matrix2{T, -D, Rational(1), Rational(0)}, PlanePoint{});
}

std::vector<unsigned long> values(const std::vector<Prime>& ps) {
    std::vector<unsigned long> out;
    for (const Prime& p : ps) out.push_back(p.ulong());
    return out;
}

}  // namespace

TEST_SUITE("global-height") {

TEST_CASE("prime families") {
    PrimeFamilies f = prime_families(q("3/2"), q("1"));
    CHECK(values(f.p1) == std::vector<unsigned long>{2});
    CHECK(f.p2.empty());

    f = prime_families(q("5"), q("6"));
    CHECK(f.p1.empty());
    CHECK(f.p2.empty());

    f = prime_families(q("-3/4"), q("1"));
    CHECK(values(f.p1) == std::vector<unsigned long>{2});

    f = prime_families(q("7/12"), q("5/18"));  // 2: 1 < 4 -> P1; 3: 2 >= 2 -> P2
    CHECK(values(f.p1) == std::vector<unsigned long>{2});
    CHECK(values(f.p2) == std::vector<unsigned long>{3});
}

TEST_CASE("split consistency") {
    test_support::RandomRationals rng(8);
    for (int i = 0; i < 300; ++i) {
        const Rational T = rng.next(200), D = rng.nonzero(200);
        const PrimeFamilies f = prime_families(T, D);
        for (const Prime& p : prime_divisors(T.den() * D.den())) {
            const bool in1 = std::find(f.p1.begin(), f.p1.end(), p) != f.p1.end();
            const bool in2 = std::find(f.p2.begin(), f.p2.end(), p) != f.p2.end();
            const std::int64_t nd = val_p(D.den(), p).value();
            const std::int64_t nt = val_p(T.den(), p).value();
            const bool neither = nd == 0 && nd >= 2 * nt;
            CHECK(int(in1) + int(in2) + int(neither) == 1);
        }
    }
}

TEST_CASE("h* examples") {
    CHECK(h_star(q("3/2"), q("1")) == doctest::Approx(std::log(2.0)));
    CHECK(h_star(q("-3/4"), q("1")) == doctest::Approx(2 * std::log(2.0)));
    CHECK(h_star(q("5"), q("6")) == 0.0);
}

TEST_CASE("spectral log radius") {
    CHECK(spectral_log_radius(q("3/2"), q("1")).to_double() == doctest::Approx(0.0));
    CHECK(spectral_log_radius(q("5"), q("6")).to_double() == doctest::Approx(std::log(3.0)));
    CHECK(spectral_log_radius(q("2"), q("1")).to_double() == 0.0);
    CHECK(spectral_log_radius(q("-5"), q("6")).to_double() == doctest::Approx(std::log(3.0)));
    CHECK(spectral_log_radius(q("0"), q("-9")).to_double() == doctest::Approx(std::log(3.0)));
    // 400 bits: log 3 agrees with MPFR's constant-precision result to the last digits printed.
    CHECK(spectral_log_radius(q("5"), q("6"), 400).to_string(60) ==
          BigFloat::log(q("3"), 400).to_string(60));
}

TEST_CASE("predictions match the mpmath oracle") {
    for (const auto& c : oracles()["global_height"]) {
        const Rational T = q(c["T"]), D = q(c["D"]);
        CAPTURE(c.dump());
        const GlobalHeightPrediction h = predict_h(companion(T, D));
        CHECK(h.h_star.to_double() == doctest::Approx(c["h_star"].get<double>()).epsilon(1e-12));
        CHECK(std::fabs(h.log_alpha.to_double() - c["log_alpha"].get<double>()) < 1e-12);
        CHECK(h.value.to_double() == doctest::Approx(c["value"].get<double>()).epsilon(1e-12));
        CHECK(h.h_star_terms.size() == c["terms"].size());
        for (const LogTerm& t : h.h_star_terms) CHECK(q(c["terms"][t.prime.str()]) == t.coefficient);
    }
}

TEST_CASE("predict_h examples and period scaling") {
    const GlobalHeightPrediction lin = predict_h(companion(q("3/2"), q("1")));
    CHECK(lin.value.to_double() == doctest::Approx(std::log(2.0)));
    CHECK(predict_h(companion(q("5"), q("6"))).value.to_double() == doctest::Approx(std::log(3.0)));

    const GlobalHeightPrediction island = predict_h(q("-3/4"), q("1"));
    CHECK(island.value.to_double() == doctest::Approx(2 * std::log(2.0)));
    const GlobalHeightPrediction per_step = island.divided_by(5);
    CHECK(per_step.value.to_double() == doctest::Approx(0.4 * std::log(2.0)));
    REQUIRE(per_step.h_star_terms.size() == 1);
    CHECK(per_step.h_star_terms[0].coefficient == q("2/5"));
    CHECK_THROWS_AS(island.divided_by(0), PreconditionError);
}

TEST_CASE("conjugacy invariance") {
    test_support::RandomRationals rng(9);
    for (int i = 0; i < 40; ++i) {
        const Matrix2 m{rng.next(9), rng.next(9), rng.next(9), rng.next(9)};
        if (m.det().is_zero()) continue;
        const Matrix2 c{rng.next(9), rng.next(9), rng.next(9), rng.next(9)};
        if (c.det().is_zero()) continue;
        const Matrix2 conj = c * m * c.inverse();
        CHECK(trace_det(conj).trace == trace_det(m).trace);
        const auto a = predict_h(AffineMap2(m, PlanePoint{}));
        const auto b = predict_h(AffineMap2(conj, rng.point()));
        CHECK(a.value.to_string(30) == b.value.to_string(30));
    }
}

TEST_CASE("bridge between local and global predictions") {
    // h* = sum over P1 and P2 of max(h_p for s = 0, 0) log p.
    for (const auto& c : oracles()["global_height"]) {
        const Rational T = q(c["T"]), D = q(c["D"]);
        CAPTURE(c.dump());
        const PrimeFamilies fam = prime_families(T, D);
        std::vector<Prime> all = fam.p1;
        all.insert(all.end(), fam.p2.begin(), fam.p2.end());
        double sum = 0;
        for (const Prime& p : all) {
            const Rational hp = predict_hp(T, D, p, true).value;
            if (hp.sign() > 0) sum += hp.to_double() * std::log(p.value().get_d());
        }
        CHECK(sum == doctest::Approx(h_star(T, D)).epsilon(1e-12));
    }
}

TEST_CASE("measured global heights") {
    const auto& orbits = oracles()["orbits"];
    const AffineMap2 lin = companion(q("3/2"), q("1"));
    {
        const auto& rec = orbits["linear_1_3_2_5"];
        AffineOrbit o(lin, pt("1/3", "2/5"));
        const double h = measured_h(o, 2000);
        CHECK(h == doctest::Approx(rec["log_height_T"].get<double>() / 2000).epsilon(1e-12));
        CHECK(std::fabs(h - std::log(2.0)) <= 0.01);
    }
    {
        AffineOrbit o(lin, pt("1", "0"));
        CHECK(std::fabs(measured_h(o, 2000) - std::log(2.0)) <= 0.01);
    }
    {
        const auto& rec = orbits["integer_5_6"];
        AffineOrbit o(companion(q("5"), q("6")), pt("1", "0"));
        const double h = measured_h(o, 2000);
        CHECK(h == doctest::Approx(rec["log_height_T"].get<double>() / 2000).epsilon(1e-12));
        CHECK(std::fabs(h - std::log(3.0)) <= 0.01);
    }
    {
        // Periodic orbit: heights stay bounded.
        AffineOrbit o(AffineMap2(Matrix2{q("0"), q("-1"), q("1"), q("0")}, pt("0", "0")), pt("7/3", "2"));
        CHECK(measured_h(o, 1000) == doctest::Approx(std::log(7.0) / 1000));
    }
    AffineOrbit o(lin, pt("1", "0"));
    CHECK_THROWS_AS(measured_h(o, 0), PreconditionError);
}

}  // TEST_SUITE
