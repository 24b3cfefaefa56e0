#pragma once

#include "arith_orbit/global_height.hpp"
#include "arith_orbit/map_config.hpp"
#include "arith_orbit/padic.hpp"
#include "arith_orbit/piecewise.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arith_orbit {

using HeaderFields = std::vector<std::pair<std::string, std::string>>;

/// One `# key: value` line per field.
void write_csv_header(std::ostream& os, const HeaderFields& fields);

/// Fixed-format decimal used for measured values in CSVs and reports.
std::string format_decimal(double v);

/// Worker count for a batch of `work_items`: `requested` if nonzero, else
/// the hardware concurrency, capped by ARITH_ORBIT_THREADS when that is set
/// to a positive integer and never above work_items.
unsigned worker_threads(unsigned requested, std::size_t work_items);

// ---------------------------------------------------------------------------
// Orbit dumps and traces
// ---------------------------------------------------------------------------

/// `t,x,y` rows for t = 0..T with x, y rounded to `digits` significant digits.
void run_orbit_dump(const AnyMap& map, const PlanePoint& z0, std::uint64_t T, int digits, std::ostream& os);

/// Streams `t,nu_point,nu_x` for t = 0..T and returns the point trace.
ValuationTrace run_valuation_trace(const AnyMap& map, const PlanePoint& z0, const Prime& p, std::uint64_t T,
                                   std::ostream& os);

// ---------------------------------------------------------------------------
// Height scans along a segment
// ---------------------------------------------------------------------------

struct ScanSpec {
    PlanePoint z_start;
    PlanePoint z_end;
    std::size_t count = 2;
    std::vector<Prime> primes;
    std::vector<std::uint64_t> horizons;

    /// Throws ConfigError unless count >= 2, primes is nonempty and horizons
    /// is a nonempty strictly increasing list of positive integers.
    void validate() const;
    /// z_start + i / (count - 1) (z_end - z_start), exact.
    PlanePoint initial_point(std::size_t i) const;
};

/// measured h_p per (prime, horizon); nullopt marks an invalid cell (an
/// endpoint valuation was +inf).
struct ScanRow {
    std::size_t index;
    PlanePoint z0;
    std::vector<std::optional<double>> hp;  // prime-major: hp[k * horizons + j]
};

struct VariationPoint {
    Prime prime;
    std::uint64_t T;
    std::optional<double> V;  // nullopt when no valid pair exists
    std::size_t valid_pairs;
    std::size_t invalid_cells;
};

struct ScanResult {
    ScanSpec spec;
    std::vector<ScanRow> rows;  // ordered by index
    std::vector<VariationPoint> variation;
    std::size_t valid_cells = 0;
    std::size_t invalid_cells = 0;

    const std::optional<double>& cell(std::size_t row, std::size_t prime_index, std::size_t horizon_index) const;
};

/// V_N(T) = mean over valid adjacent pairs of |h_p(z0^(i+1), T) - h_p(z0^(i), T)|.
/// An invalid cell removes both pairs it belongs to.
std::vector<VariationPoint> total_variation(const ScanSpec& spec, const std::vector<ScanRow>& rows);

/// Runs the `count` orbits (in parallel when threads allow); the result does
/// not depend on the thread count.
ScanResult run_height_scan(const AnyMap& map, const ScanSpec& spec, unsigned threads = 0);

/// `i,x0,y0,hp_T{h}...` with exact x0, y0; invalid cells print as `nan`.
/// With several primes the value columns are named `h{p}_T{h}`.
void write_scan_csv(const ScanResult& result, std::ostream& os);
/// `T,V,valid_pairs`, with a leading `p` column when the scan has several primes.
void write_variation_csv(const ScanResult& result, std::ostream& os);

// ---------------------------------------------------------------------------
// Predictions joined with measurements
// ---------------------------------------------------------------------------

struct PrimeComparison {
    Prime prime;
    Rational predicted;
    std::optional<double> measured;
    std::optional<double> deviation;
    bool bound_only;
};

struct HeightReport {
    std::string source;  // "affine", "island" or "code"
    std::size_t period;  // time scale of the analysed return map
    AffineMap2 analysed_map;
    std::optional<IslandReport> island;
    std::optional<PlanePoint> z0;
    std::uint64_t horizon;
    std::vector<PrimeComparison> hp;
    GlobalHeightPrediction h;
    std::optional<double> measured_h;
    std::optional<double> deviation_h;
    std::vector<std::string> notes;
};

struct PredictRequest {
    std::optional<PlanePoint> z0;
    std::optional<std::vector<std::size_t>> code;  // piecewise maps only; overrides island detection
    std::vector<Prime> primes;
    std::uint64_t horizon = 4000;
    std::uint64_t window = 1000;
    mpfr_prec_t bits = 128;
};

/// Affine maps are predicted directly. Piecewise maps use the island of z0
/// or, when given, the return map of an explicit code (uncertified). The
/// orbit of z0, if present, is measured over `horizon` steps.
HeightReport run_predict_report(const AnyMap& map, const PredictRequest& request);

}  // namespace arith_orbit
