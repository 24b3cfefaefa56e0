#include "support.hpp"

#include "arith_orbit/phase_module.hpp"

#include <doctest.h>

using namespace arith_orbit;
using test_support::pt;
using test_support::q;

namespace {

PiecewiseMap single_break(const char* a, const char* b_left, const char* b_right) {
    return PiecewiseMap({{std::nullopt, q("0"), false, false, q(a), q(b_left)},
                         {q("0"), std::nullopt, true, false, q(a), q(b_right)}},
                        q("1"));
}

std::vector<unsigned long> values(const std::vector<Prime>& ps) {
    std::vector<unsigned long> out;
    for (const Prime& p : ps) out.push_back(p.ulong());
    return out;
}

// Random element of (1/N) K: k / (N * prod p^e).
PlanePoint sample(const PhaseModule& m, test_support::RandomRationals& rng) {
    auto coord = [&] {
        Rational r(rng.integer(-400, 400));
        r = r / Rational(m.N);
        for (const Prime& p : m.primes) r = r / pow(Rational(p.value()), rng.integer(0, 6));
        return r;
    };
    PlanePoint z;
    z.x = coord();
    z.y = coord();
    return z;
}

}  // namespace

TEST_SUITE("phase-module") {

TEST_CASE("three-piece map gives Z[1/2]") {
    const PhaseModule m = build_phase_module(PiecewiseMap::three_piece());
    CHECK(values(m.primes) == std::vector<unsigned long>{2});
    CHECK(m.N == 1);
    CHECK(m.describe() == "Z[1/2]");
    CHECK(m.d == std::vector<BigInt>{2, 1, 2});
    CHECK(m.d_prime == std::vector<BigInt>{1, 1, 1});
}

TEST_CASE("two-slope (2/3, 3/2) map gives Z[1/6]") {
    const PhaseModule m = build_phase_module(PiecewiseMap::two_slope(q("2/3"), q("3/2")));
    CHECK(values(m.primes) == std::vector<unsigned long>{2, 3});
    CHECK(m.N == 1);
    CHECK(m.describe() == "Z[1/6]");
}

TEST_CASE("translations coprime to P scale the module") {
    const PhaseModule a = build_phase_module(single_break("2", "1/5", "0"));
    CHECK(a.primes.empty());
    CHECK(a.N == 5);
    CHECK(a.describe() == "(1/5)Z");

    const PhaseModule b = build_phase_module(single_break("3/2", "1/10", "2/3"));
    CHECK(values(b.primes) == std::vector<unsigned long>{2});
    CHECK(b.N == 15);
    CHECK(b.d_prime == std::vector<BigInt>{5, 3});
    CHECK(b.describe() == "(1/15)Z[1/2]");
}

TEST_CASE("membership") {
    const PhaseModule z2 = build_phase_module(PiecewiseMap::three_piece());
    CHECK(membership(pt("3/8", "-5"), z2));
    CHECK_FALSE(membership(pt("1/3", "0"), z2));
    CHECK_FALSE(membership(pt("0", "1/6"), z2));

    const PhaseModule fifth = build_phase_module(single_break("2", "1/5", "0"));
    CHECK(membership(pt("1/5", "-7/5"), fifth));
    CHECK_FALSE(membership(pt("1/10", "0"), fifth));
    CHECK_FALSE(membership(pt("1/25", "0"), fifth));
}

TEST_CASE("forward invariance on 1000 sampled points") {
    const std::vector<PiecewiseMap> maps{PiecewiseMap::three_piece(), PiecewiseMap::two_slope(q("2/3"), q("3/2")),
                                         single_break("2", "1/5", "0"), single_break("3/2", "1/10", "2/3"),
                                         PiecewiseMap::three_piece(q("497/499"))};
    test_support::RandomRationals rng(21);
    for (const PiecewiseMap& f : maps) {
        const PhaseModule m = build_phase_module(f);
        CAPTURE(m.describe());
        for (int i = 0; i < 1000; ++i) {
            PlanePoint z = sample(m, rng);
            REQUIRE(membership(z, m));
            // A few steps per sample so both sides of every break are visited.
            for (int s = 0; s < 3; ++s) {
                z = f.apply(z).first;
                REQUIRE(membership(z, m));
            }
        }
    }
}

TEST_CASE("minimality: a coarser N is not invariant") {
    const PiecewiseMap f = single_break("3/2", "1/10", "2/3");
    const PhaseModule m = build_phase_module(f);
    for (const unsigned long r : {3UL, 5UL}) {
        PhaseModule coarse = m;
        coarse.N = m.N / r;
        bool escaped = false;
        for (const PlanePoint& z : {pt("-1", "0"), pt("0", "0")})
            if (membership(z, coarse) && !membership(f.apply(z).first, coarse)) escaped = true;
        CHECK(escaped);
    }
    // The module must also contain the orbit of the origin.
    PlanePoint z = pt("0", "0");
    for (int t = 0; t < 50; ++t) {
        REQUIRE(membership(z, m));
        z = f.apply(z).first;
    }
}

}  // TEST_SUITE
