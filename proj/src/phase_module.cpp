#include "arith_orbit/phase_module.hpp"

#include <gmp.h>

namespace arith_orbit {

namespace {

BigInt strip_primes(BigInt n, const std::vector<Prime>& primes) {
    for (const Prime& p : primes) mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.value().get_mpz_t());
    return n;
}

bool supported_on(const Rational& r, const std::vector<Prime>& primes) {
    return strip_primes(r.den(), primes) == 1;
}

}  // namespace

std::string PhaseModule::describe() const {
    std::string ring = "Z";
    if (!primes.empty()) {
        BigInt product = 1;
        for (const Prime& p : primes) product *= p.value();
        ring += "[1/" + product.get_str() + "]";
    }
    return N == 1 ? ring : "(1/" + N.get_str() + ")" + ring;
}

PhaseModule build_phase_module(const PiecewiseMap& map) {
    PhaseModule out;
    out.primes = prime_set(map);
    out.N = 1;
    for (const StripPiece& piece : map.pieces()) {
        // The second translation component is 0, whose denominator is 1.
        const BigInt& di = piece.b.den();
        BigInt dpi = strip_primes(di, out.primes);
        mpz_lcm(out.N.get_mpz_t(), out.N.get_mpz_t(), dpi.get_mpz_t());
        out.generators.push_back(piece.b);
        out.d.push_back(di);
        out.d_prime.push_back(std::move(dpi));
    }
    return out;
}

bool membership(const PlanePoint& z, const PhaseModule& module) {
    const Rational n(module.N);
    return supported_on(n * z.x, module.primes) && supported_on(n * z.y, module.primes);
}

}  // namespace arith_orbit
