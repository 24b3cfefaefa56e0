#pragma once

#include "arith_orbit/affine.hpp"
#include "arith_orbit/orbit.hpp"
#include "arith_orbit/prime.hpp"
#include "arith_orbit/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace arith_orbit {

// ---------------------------------------------------------------------------
// Eigenvalue valuations and the local-height prediction for affine maps.
//
// For q(x) = x^2 - T x + D with u = nu_p(D) and v = nu_p(T), the Newton
// polygon of q has two sides of slopes v - u and -v when u > 2v, and a single
// side of slope -u/2 otherwise. Root valuations are the negated slopes.
// Valuations in the quadratic extension are plain rationals (half-integers
// allowed), normalized to agree with nu_p on Q.
// ---------------------------------------------------------------------------

enum class SlopeCase { distinct_slopes, single_slope };

struct NewtonPolygonResult {
    Rational val_alpha;  // a largest eigenvalue: val_alpha <= val_beta
    Rational val_beta;
    SlopeCase slope_case;
};

/// Throws PreconditionError when u is infinite (D = 0, singular matrix).
NewtonPolygonResult newton_valuations(const ExtendedInt& u, const ExtendedInt& v);

enum class HeightCase { i, ii };

struct LocalHeightPrediction {
    Rational value;
    HeightCase height_case;
    bool homogeneous;  // translation == (0, 0)
    /// nu_p(D) == 2 nu_p(T): only an upper bound on h_p is backed by the
    /// valuation estimates; `value` is still the case-ii formula.
    bool bound_only;
};

/// Case i when nu_p(D) > 2 nu_p(T) (value -nu_p(T)), case ii otherwise
/// (value -nu_p(D)/2); clamped below by 0 when the translation is nonzero.
LocalHeightPrediction predict_hp(const AffineMap2& map, const Prime& p);

/// Same prediction from (T, D) alone, for the given homogeneity.
LocalHeightPrediction predict_hp(const Rational& T, const Rational& D, const Prime& p, bool homogeneous);

// ---------------------------------------------------------------------------
// Valuation traces and the finite-time estimators built on them.
// ---------------------------------------------------------------------------

struct ValuationSample {
    std::uint64_t t;
    ExtendedInt nu;
};

struct ValuationTrace {
    Prime prime;
    std::vector<ValuationSample> samples;  // t = 0, 1, ..., T_max

    /// CSV with header `t,nu`; infinite valuations print as `inf`.
    void write_csv(std::ostream& os) const;
};

enum class TraceComponent { point, x, y };

/// Records nu_p of the orbit's current point and the next `T_max` points,
/// advancing the orbit by T_max steps. Sample times are relative to the
/// orbit's position on entry.
ValuationTrace valuation_trace(Orbit& orbit, const Prime& p, std::uint64_t T_max,
                               TraceComponent component = TraceComponent::point);

/// Two-endpoint estimator (nu_p(z_0) - nu_p(z_T)) / T over the whole trace.
/// Throws InfiniteValuationError when either endpoint valuation is +inf.
double measured_hp(const ValuationTrace& trace);

/// Smallest t such that every recorded increment nu(z_{s+1}) - nu(z_s) with
/// s >= t equals -expected_step. Stabilization is only claimed over the
/// recorded window; nullopt means "not reached" (the last increment already
/// disagrees, or the trace has fewer than two samples).
std::optional<std::uint64_t> lag_time(const ValuationTrace& trace, const Rational& expected_step);

// ---------------------------------------------------------------------------
// Hensel lifting of the normalized characteristic polynomial
//     s(x) = x^2 - T' x + D' p^(u - 2v),
// which factors as x (x - T') mod p in the u > 2v regime.
// ---------------------------------------------------------------------------

struct HenselRoot {
    BigInt residue;          // in [0, p^precision)
    unsigned precision;      // K
    std::int64_t valuation;  // nu_p of the p-adic root itself
};

/// Returns (alpha', beta'): the unit root lifted from T' mod p and the root
/// lifted from 0, each exact mod p^K. Requires p not dividing T', and
/// p dividing Dterm with Dterm != 0.
std::pair<HenselRoot, HenselRoot> hensel_quadratic_roots(const BigInt& t_prime, const BigInt& d_term,
                                                         const Prime& p, unsigned K);

// ---------------------------------------------------------------------------
// Points close (p-adically) to the eigenline of the smaller eigenvalue.
// ---------------------------------------------------------------------------

struct NearEigenspacePoint {
    PlanePoint point;  // z' with ||z' - z|| + ||z' - zeta||_p < eps
    PlanePoint zeta;   // rational representative of the target on the beta-eigenline
    unsigned k;        // index in r_k = 1 / (1 + p^k)
    unsigned lift_precision;
    /// nu_p of the alpha-component minus nu_p of the beta-component of
    /// z' - z*; at least K * (nu_p(beta) - nu_p(alpha)).
    std::int64_t separation;
};

/// Constructs z' = z + r_k (zeta - z) for the smallest k meeting both the
/// archimedean/p-adic eps bound and a separation of K * (u - 2v) from the
/// beta-eigenline, so that the beta-dominated prefix of the valuation trace
/// lasts about K steps. Rejects case-ii maps and K = 0.
NearEigenspacePoint near_eigenspace_point(const AffineMap2& map, const Prime& p, const PlanePoint& z, unsigned K,
                                          const Rational& eps);

/// Non-degeneracy of z0 for the height case of `map` at p, for the x or the
/// y coordinate of z'_0 = z0 - z* and z'_1 = M z'_0. False when z0 = z*.
bool nondegenerate(const AffineMap2& map, const PlanePoint& z0, const Prime& p);

}  // namespace arith_orbit
