#include "arith_orbit/experiments.hpp"

#include "arith_orbit/bigfloat.hpp"
#include "arith_orbit/error.hpp"
#include "arith_orbit/height.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace arith_orbit {

void write_csv_header(std::ostream& os, const HeaderFields& fields) {
    for (const auto& [key, value] : fields) os << "# " << key << ": " << value << '\n';
}

std::string format_decimal(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

unsigned worker_threads(unsigned requested, std::size_t work_items) {
    unsigned n = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ARITH_ORBIT_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned long>(n, static_cast<unsigned long>(cap));
    }
    if (work_items < n) n = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
    return n;
}

namespace {

std::string decimal(const Rational& r, int digits, mpfr_prec_t bits) {
    return BigFloat(r, bits).to_string(digits);
}

}  // namespace

void run_orbit_dump(const AnyMap& map, const PlanePoint& z0, std::uint64_t T, int digits, std::ostream& os) {
    if (digits < 1) throw ConfigError("decimal digits must be positive");
    // log2(10) < 3.33, plus guard bits for the final rounding.
    const auto bits = static_cast<mpfr_prec_t>(digits * 10 / 3 + 16);
    std::unique_ptr<Orbit> orbit = make_orbit(map, z0);
    os << "t,x,y\n";
    for (std::uint64_t t = 0;; ++t) {
        const PlanePoint& z = orbit->current();
        os << t << ',' << decimal(z.x, digits, bits) << ',' << decimal(z.y, digits, bits) << '\n';
        if (t == T) break;
        orbit->advance();
    }
}

ValuationTrace run_valuation_trace(const AnyMap& map, const PlanePoint& z0, const Prime& p, std::uint64_t T,
                                   std::ostream& os) {
    std::unique_ptr<Orbit> orbit = make_orbit(map, z0);
    ValuationTrace trace{p, {}};
    trace.samples.reserve(T + 1);
    os << "t,nu_point,nu_x\n";
    for (std::uint64_t t = 0;; ++t) {
        const PlanePoint& z = orbit->current();
        const ExtendedInt nu = val_pt(z, p);
        os << t << ',' << nu << ',' << val_p(z.x, p) << '\n';
        trace.samples.push_back({t, nu});
        if (t == T) break;
        orbit->advance();
    }
    return trace;
}

void ScanSpec::validate() const {
    if (count < 2) throw ConfigError("scan count must be at least 2");
    if (primes.empty()) throw ConfigError("scan needs at least one prime");
    if (horizons.empty()) throw ConfigError("scan needs at least one horizon");
    for (std::size_t j = 0; j < horizons.size(); ++j) {
        if (horizons[j] == 0) throw ConfigError("horizons must be positive");
        if (j > 0 && horizons[j] <= horizons[j - 1]) throw ConfigError("horizons must be strictly increasing");
    }
}

PlanePoint ScanSpec::initial_point(std::size_t i) const {
    const Rational s(static_cast<long>(i), static_cast<long>(count - 1));
    return z_start + s * (z_end - z_start);
}

const std::optional<double>& ScanResult::cell(std::size_t row, std::size_t prime_index,
                                              std::size_t horizon_index) const {
    return rows.at(row).hp.at(prime_index * spec.horizons.size() + horizon_index);
}

std::vector<VariationPoint> total_variation(const ScanSpec& spec, const std::vector<ScanRow>& rows) {
    const std::size_t H = spec.horizons.size();
    std::vector<VariationPoint> out;
    for (std::size_t k = 0; k < spec.primes.size(); ++k) {
        for (std::size_t j = 0; j < H; ++j) {
            const std::size_t c = k * H + j;
            double sum = 0;
            std::size_t pairs = 0;
            std::size_t invalid = 0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (!rows[i].hp[c]) ++invalid;
                if (i + 1 < rows.size() && rows[i].hp[c] && rows[i + 1].hp[c]) {
                    sum += std::fabs(*rows[i + 1].hp[c] - *rows[i].hp[c]);
                    ++pairs;
                }
            }
            std::optional<double> V;
            if (pairs > 0) V = sum / static_cast<double>(pairs);
            out.push_back({spec.primes[k], spec.horizons[j], V, pairs, invalid});
        }
    }
    return out;
}

namespace {

ScanRow scan_one(const AnyMap& map, const ScanSpec& spec, std::size_t index) {
    ScanRow row{index, spec.initial_point(index), {}};
    const std::size_t H = spec.horizons.size();
    row.hp.assign(spec.primes.size() * H, std::nullopt);

    std::vector<ExtendedInt> nu0;
    for (const Prime& p : spec.primes) nu0.push_back(val_pt(row.z0, p));

    std::unique_ptr<Orbit> orbit = make_orbit(map, row.z0);
    for (std::size_t j = 0; j < H; ++j) {
        orbit->advance(spec.horizons[j] - orbit->time());
        for (std::size_t k = 0; k < spec.primes.size(); ++k) {
            const ExtendedInt nuT = val_pt(orbit->current(), spec.primes[k]);
            if (nu0[k].is_infinite() || nuT.is_infinite()) continue;
            row.hp[k * H + j] = static_cast<double>(nu0[k].value() - nuT.value()) / static_cast<double>(spec.horizons[j]);
        }
    }
    return row;
}

}  // namespace

ScanResult run_height_scan(const AnyMap& map, const ScanSpec& spec, unsigned threads) {
    spec.validate();
    ScanResult result{spec, std::vector<ScanRow>(spec.count), {}, 0, 0};

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < spec.count; i = next++) {
            try {
                result.rows[i] = scan_one(map, spec, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = spec.count;
            }
        }
    };
    const unsigned n = worker_threads(threads, spec.count);
    if (n <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (const ScanRow& row : result.rows)
        for (const auto& c : row.hp) ++(c ? result.valid_cells : result.invalid_cells);
    result.variation = total_variation(spec, result.rows);
    return result;
}

void write_scan_csv(const ScanResult& result, std::ostream& os) {
    const ScanSpec& spec = result.spec;
    const bool single = spec.primes.size() == 1;
    os << "i,x0,y0";
    for (const Prime& p : spec.primes)
        for (std::uint64_t T : spec.horizons) os << ',' << (single ? "hp" : "h" + p.str()) << "_T" << T;
    os << '\n';
    for (const ScanRow& row : result.rows) {
        os << row.index << ',' << row.z0.x << ',' << row.z0.y;
        for (const auto& c : row.hp) os << ',' << (c ? format_decimal(*c) : "nan");
        os << '\n';
    }
}

void write_variation_csv(const ScanResult& result, std::ostream& os) {
    const bool single = result.spec.primes.size() == 1;
    os << (single ? "" : "p,") << "T,V,valid_pairs\n";
    for (const VariationPoint& v : result.variation) {
        if (!single) os << v.prime.str() << ',';
        os << v.T << ',' << (v.V ? format_decimal(*v.V) : "nan") << ',' << v.valid_pairs << '\n';
    }
}

namespace {

std::optional<double> measure_hp(const ExtendedInt& nu0, const ExtendedInt& nuT, std::uint64_t T) {
    if (nu0.is_infinite() || nuT.is_infinite()) return std::nullopt;
    return static_cast<double>(nu0.value() - nuT.value()) / static_cast<double>(T);
}

}  // namespace

HeightReport run_predict_report(const AnyMap& map, const PredictRequest& request) {
    if (request.horizon == 0) throw ConfigError("horizon must be positive");
    std::optional<IslandReport> island;
    std::optional<AffineMap2> analysed;
    std::size_t period = 1;
    std::string source;
    std::vector<std::string> notes;

    if (const auto* affine = std::get_if<AffineMap2>(&map)) {
        if (request.code) throw ConfigError("--code applies to piecewise maps only");
        analysed = *affine;
        source = "affine";
    } else {
        const PiecewiseMap& f = std::get<PiecewiseMap>(map);
        if (request.code) {
            for (std::size_t s : *request.code)
                if (s >= f.pieces().size()) throw ConfigError("code symbol " + std::to_string(s) + " names no piece");
            analysed = return_map(f, *request.code);
            period = request.code->size();
            source = "code";
            notes.emplace_back("return map of an explicit code; island membership of z0 is not certified");
        } else {
            if (!request.z0) throw ConfigError("piecewise predictions need --z0 or --code");
            island = island_report(f, *request.z0, request.window, request.primes, request.bits);
            analysed = island->return_map;
            period = island->period;
            source = "island";
        }
    }

    HeightReport report{source, period, *analysed, std::move(island), request.z0, request.horizon,
                        {}, predict_h(*analysed, request.bits).divided_by(period), std::nullopt, std::nullopt,
                        std::move(notes)};

    const Rational inv_n(1L, static_cast<long>(period));
    for (const Prime& p : request.primes) {
        const LocalHeightPrediction pred = predict_hp(*analysed, p);
        report.hp.push_back({p, pred.value * inv_n, std::nullopt, std::nullopt, pred.bound_only});
    }

    if (request.z0) {
        std::vector<ExtendedInt> nu0;
        for (const Prime& p : request.primes) nu0.push_back(val_pt(*request.z0, p));
        std::unique_ptr<Orbit> orbit = make_orbit(map, *request.z0);
        orbit->advance(request.horizon);
        const PlanePoint& zT = orbit->current();
        for (std::size_t k = 0; k < request.primes.size(); ++k) {
            PrimeComparison& c = report.hp[k];
            c.measured = measure_hp(nu0[k], val_pt(zT, c.prime), request.horizon);
            if (c.measured)
                c.deviation = std::fabs(*c.measured - c.predicted.to_double());
            else
                report.notes.push_back("h_" + c.prime.str() + " not measured: infinite valuation at an endpoint");
        }
        report.measured_h = log_big(height_pt(zT)) / static_cast<double>(request.horizon);
        report.deviation_h = std::fabs(*report.measured_h - report.h.value.to_double());
    }
    return report;
}

}  // namespace arith_orbit
