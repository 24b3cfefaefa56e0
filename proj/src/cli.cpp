#include "arith_orbit/cli.hpp"

#include "arith_orbit/bounded_height.hpp"
#include "arith_orbit/error.hpp"
#include "arith_orbit/experiments.hpp"
#include "arith_orbit/map_config.hpp"
#include "arith_orbit/phase_module.hpp"
#include "arith_orbit/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace arith_orbit {

namespace {

struct RawOptions {
    std::string map, z0, out, horizons, segment, code, p, primes;
    std::uint64_t T = 0;
    std::uint64_t seed = 0;
    std::uint64_t window = 1000;
    long precision = 128;
    int digits = 12;
    std::size_t count = 50;
    std::uint32_t N = 1;
    unsigned threads = 0;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

std::uint64_t parse_uint(const std::string& text, const std::string& what) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ConfigError(what + ": expected a non-negative integer, got '" + text + "'");
    try {
        return std::stoull(text);
    } catch (const std::out_of_range&) {
        throw ConfigError(what + ": integer out of range '" + text + "'");
    }
}

Prime parse_prime(const std::string& text) {
    const std::uint64_t v = parse_uint(text, "prime");
    return Prime(BigInt(std::to_string(v)));
}

RunConfig convert(const std::string& command, const RawOptions& raw, const CLI::App& sub) {
    auto given = [&](const char* name) { return sub.get_option_no_throw(name) && sub.count(name) > 0; };

    RunConfig c;
    c.command = command;
    if (given("--map")) c.map_path = raw.map;
    if (given("--z0")) c.z0 = parse_point(raw.z0);
    if (given("--T")) c.T = raw.T;
    if (given("--out")) c.out = raw.out;
    if (given("--p")) c.primes.push_back(parse_prime(raw.p));
    if (given("--primes"))
        for (const std::string& item : split(raw.primes, ',')) c.primes.push_back(parse_prime(item));
    std::vector<Prime> unique;
    for (Prime& p : c.primes)
        if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));
    c.primes = std::move(unique);
    if (given("--horizons"))
        for (const std::string& item : split(raw.horizons, ',')) c.horizons.push_back(parse_uint(item, "--horizons"));
    if (given("--segment")) {
        const std::vector<std::string> ends = split(raw.segment, ':');
        if (ends.size() != 2) throw ConfigError("--segment: expected 'x0,y0:x1,y1'");
        c.segment = std::make_pair(parse_point(ends[0]), parse_point(ends[1]));
    }
    if (given("--code")) {
        std::vector<std::size_t> symbols;
        for (const std::string& item : split(raw.code, ','))
            symbols.push_back(static_cast<std::size_t>(parse_uint(item, "--code")));
        if (symbols.empty()) throw ConfigError("--code: empty code");
        c.code = std::move(symbols);
    }
    if (raw.precision < 16 || raw.precision > 1 << 20) throw ConfigError("--precision: expected 16..1048576 bits");
    c.precision = static_cast<mpfr_prec_t>(raw.precision);
    if (raw.digits < 1 || raw.digits > 10000) throw ConfigError("--digits: expected 1..10000");
    c.digits = raw.digits;
    c.count = raw.count;
    c.seed = raw.seed;
    c.window = raw.window;
    c.N = raw.N;
    c.threads = raw.threads;
    return c;
}

}  // namespace

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Exact rational orbits of planar affine and piecewise-affine maps, with heights."};
    app.require_subcommand(1);
    RawOptions raw;

    auto map_opt = [&](CLI::App* s) { s->add_option("--map", raw.map, "map config (JSON)")->required(); };
    auto z0_opt = [&](CLI::App* s, bool required) {
        auto* o = s->add_option("--z0", raw.z0, "initial point x,y (rationals)");
        if (required) o->required();
    };
    auto out_opt = [&](CLI::App* s) { s->add_option("--out", raw.out, "output file (default: stdout)"); };
    auto seed_opt = [&](CLI::App* s) { s->add_option("--seed", raw.seed, "recorded in the CSV header"); };
    auto primes_opt = [&](CLI::App* s) {
        s->add_option("--p", raw.p, "prime");
        s->add_option("--primes", raw.primes, "comma-separated primes");
    };

    CLI::App* orbit = app.add_subcommand("orbit", "decimal orbit dump t,x,y");
    map_opt(orbit);
    z0_opt(orbit, true);
    orbit->add_option("--T", raw.T, "number of steps")->required();
    orbit->add_option("--digits", raw.digits, "significant digits (default 12)");
    out_opt(orbit);
    seed_opt(orbit);

    CLI::App* trace = app.add_subcommand("trace", "p-adic valuation trace t,nu_point,nu_x");
    map_opt(trace);
    z0_opt(trace, true);
    trace->add_option("--p", raw.p, "prime")->required();
    trace->add_option("--T", raw.T, "number of steps")->required();
    out_opt(trace);
    seed_opt(trace);

    CLI::App* scan = app.add_subcommand("scan", "measured h_p along a segment");
    CLI::App* variation = app.add_subcommand("variation", "total variation V_N(T) of a segment scan");
    for (CLI::App* s : {scan, variation}) {
        map_opt(s);
        s->add_option("--segment", raw.segment, "x0,y0:x1,y1")->required();
        s->add_option("--count", raw.count, "number of initial points (default 50)");
        primes_opt(s);
        s->add_option("--horizons", raw.horizons, "comma-separated increasing horizons")->required();
        s->add_option("--threads", raw.threads, "worker threads (default: hardware, capped by ARITH_ORBIT_THREADS)");
        out_opt(s);
        seed_opt(s);
    }

    CLI::App* island = app.add_subcommand("island", "certify an island and predict its heights (JSON)");
    map_opt(island);
    z0_opt(island, true);
    primes_opt(island);
    island->add_option("--window", raw.window, "code window (default 1000)");
    island->add_option("--precision", raw.precision, "MPFR bits (default 128)");
    out_opt(island);

    CLI::App* predict = app.add_subcommand("predict", "predicted heights, measured when --z0 is given (JSON)");
    map_opt(predict);
    z0_opt(predict, false);
    predict->add_option("--code", raw.code, "explicit piece-index code, e.g. 2,2,0,0,1");
    primes_opt(predict);
    predict->add_option("--T", raw.T, "measurement horizon (default 4000)");
    predict->add_option("--window", raw.window, "code window (default 1000)");
    predict->add_option("--precision", raw.precision, "MPFR bits (default 128)");
    out_opt(predict);

    CLI::App* phase = app.add_subcommand("phase-module", "minimal phase module of a strip map (JSON)");
    map_opt(phase);
    out_opt(phase);

    CLI::App* enumerate = app.add_subcommand("enumerate", "points of height at most N, x,y");
    enumerate->add_option("--N", raw.N, "height bound")->required();
    out_opt(enumerate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    for (CLI::App* s : app.get_subcommands()) return convert(s->get_name(), raw, *s);
    throw ConfigError("no command given");
}

namespace {

void emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (!c.out) {
        write(out);
        out.flush();
        return;
    }
    std::ofstream file(*c.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file " + *c.out);
    write(file);
    file.flush();
    if (!file) throw IoError("write failed on " + *c.out);
}

AnyMap require_map(const RunConfig& c) {
    if (!c.map_path) throw ConfigError(c.command + " needs --map");
    return load_map_config(*c.map_path);
}

const PlanePoint& require_z0(const RunConfig& c) {
    if (!c.z0) throw ConfigError(c.command + " needs --z0");
    return *c.z0;
}

const PiecewiseMap& require_strip(const AnyMap& map, const std::string& command) {
    const auto* f = std::get_if<PiecewiseMap>(&map);
    if (!f) throw ConfigError(command + " needs a strip map");
    return *f;
}

std::vector<Prime> default_primes(const AnyMap& map) {
    if (const auto* f = std::get_if<PiecewiseMap>(&map)) return prime_set(*f);
    const auto [T, D] = trace_det(std::get<AffineMap2>(map).linear());
    BigInt dens = T.den() * D.den();
    return prime_divisors(dens);
}

std::string prime_list(const std::vector<Prime>& primes) {
    std::string s;
    for (const Prime& p : primes) s += (s.empty() ? "" : ",") + p.str();
    return s;
}

HeaderFields base_header(const RunConfig& c, const AnyMap* map) {
    HeaderFields h{{"command", c.command}};
    if (map) h.emplace_back("map", map_to_json(*map).dump());
    h.emplace_back("seed", std::to_string(c.seed));
    return h;
}

void run_scan_command(const RunConfig& c, std::ostream& out) {
    const AnyMap map = require_map(c);
    if (!c.segment) throw ConfigError(c.command + " needs --segment");
    ScanSpec spec{c.segment->first, c.segment->second, c.count, c.primes, c.horizons};
    if (spec.primes.empty()) spec.primes = default_primes(map);
    spec.validate();
    const ScanResult result = run_height_scan(map, spec, c.threads);

    std::string horizons;
    for (std::uint64_t T : spec.horizons) horizons += (horizons.empty() ? "" : ",") + std::to_string(T);
    HeaderFields h = base_header(c, &map);
    h.emplace_back("segment", to_string(spec.z_start) + ":" + to_string(spec.z_end));
    h.emplace_back("count", std::to_string(spec.count));
    h.emplace_back("primes", prime_list(spec.primes));
    h.emplace_back("horizons", horizons);
    h.emplace_back("estimator", "(nu_p(z_0) - nu_p(z_T)) / T");
    h.emplace_back("valid_cells", std::to_string(result.valid_cells));
    h.emplace_back("invalid_cells", std::to_string(result.invalid_cells));
    emit(c, out, [&](std::ostream& os) {
        write_csv_header(os, h);
        if (c.command == "scan")
            write_scan_csv(result, os);
        else
            write_variation_csv(result, os);
    });
}

}  // namespace

void dispatch(const RunConfig& c, std::ostream& out) {
    if (c.command == "orbit") {
        const AnyMap map = require_map(c);
        const PlanePoint& z0 = require_z0(c);
        const std::uint64_t T = c.T.value_or(1000);
        HeaderFields h = base_header(c, &map);
        h.emplace_back("z0", to_string(z0));
        h.emplace_back("T", std::to_string(T));
        h.emplace_back("digits", std::to_string(c.digits));
        emit(c, out, [&](std::ostream& os) {
            write_csv_header(os, h);
            run_orbit_dump(map, z0, T, c.digits, os);
        });
    } else if (c.command == "trace") {
        const AnyMap map = require_map(c);
        const PlanePoint& z0 = require_z0(c);
        if (c.primes.size() != 1) throw ConfigError("trace needs exactly one prime (--p)");
        const std::uint64_t T = c.T.value_or(1000);
        HeaderFields h = base_header(c, &map);
        h.emplace_back("z0", to_string(z0));
        h.emplace_back("p", c.primes.front().str());
        h.emplace_back("T", std::to_string(T));
        emit(c, out, [&](std::ostream& os) {
            write_csv_header(os, h);
            run_valuation_trace(map, z0, c.primes.front(), T, os);
        });
    } else if (c.command == "scan" || c.command == "variation") {
        run_scan_command(c, out);
    } else if (c.command == "island") {
        const AnyMap map = require_map(c);
        const PiecewiseMap& f = require_strip(map, c.command);
        const std::vector<Prime> primes = c.primes.empty() ? prime_set(f) : c.primes;
        const IslandReport report = island_report(f, require_z0(c), c.window, primes, c.precision);
        nlohmann::json doc = to_json(report);
        doc["z0"] = to_json(*c.z0);
        emit(c, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (c.command == "predict") {
        const AnyMap map = require_map(c);
        PredictRequest request;
        request.z0 = c.z0;
        request.code = c.code;
        request.primes = c.primes.empty() ? default_primes(map) : c.primes;
        request.horizon = c.T.value_or(4000);
        request.window = c.window;
        request.bits = c.precision;
        const nlohmann::json doc = to_json(run_predict_report(map, request));
        emit(c, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (c.command == "phase-module") {
        const AnyMap map = require_map(c);
        const nlohmann::json doc = to_json(build_phase_module(require_strip(map, c.command)));
        emit(c, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    } else if (c.command == "enumerate") {
        if (c.N < 1) throw ConfigError("--N must be at least 1");
        const BoundedHeightSet set = enumerate_bounded(c.N);
        HeaderFields h = base_header(c, nullptr);
        h.emplace_back("N", std::to_string(c.N));
        h.emplace_back("points", std::to_string(set.size()));
        emit(c, out, [&](std::ostream& os) {
            write_csv_header(os, h);
            os << "x,y\n";
            set.for_each([&](const Rational& x, const Rational& y) { os << x << ',' << y << '\n'; });
        });
    } else {
        throw ConfigError("unknown command '" + c.command + "'");
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        const std::optional<RunConfig> config = parse_command_line(argc, argv, out);
        if (config) dispatch(*config, out);
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << '\n';
        return exit_precondition_failure;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_io_error;
    }
}

}  // namespace arith_orbit
