#include "arith_orbit/report.hpp"

#include "arith_orbit/map_config.hpp"

namespace arith_orbit {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json symbols(const std::vector<std::size_t>& s) {
    json out = json::array();
    for (std::size_t v : s) out.push_back(v);
    return out;
}

json big_list(const std::vector<BigInt>& values) {
    json out = json::array();
    for (const BigInt& v : values) out.push_back(v.get_str());
    return out;
}

}  // namespace

json to_json(const std::vector<LogTerm>& terms) {
    json out = json::array();
    for (const LogTerm& t : terms) out.push_back({{"prime", t.prime.str()}, {"coefficient", t.coefficient.str()}});
    return out;
}

json to_json(const GlobalHeightPrediction& h, int digits) {
    return {{"h_star_terms", to_json(h.h_star_terms)},
            {"h_star", h.h_star.to_string(digits)},
            {"log_alpha", h.log_alpha.to_string(digits)},
            {"value", h.value.to_string(digits)},
            {"precision_bits", h.precision_bits}};
}

json to_json(const IslandReport& r, int digits) {
    json hp = json::object();
    for (const PrimeHeight& ph : r.predicted_hp) hp[ph.prime.str()] = ph.value.str();
    const std::vector<std::size_t> word(r.code.symbols.begin(),
                                        r.code.symbols.begin() + static_cast<std::ptrdiff_t>(r.period));
    return {{"n", r.period},
            {"code", symbols(word)},
            {"return_map", to_json(r.return_map)},
            {"center", to_json(r.center)},
            {"jacobian_trace", r.jacobian_trace.str()},
            {"jacobian_det", r.jacobian_det.str()},
            {"finite_order", r.finite_order},
            {"h_p", std::move(hp)},
            {"h", to_json(r.predicted_h, digits)}};
}

json to_json(const HeightReport& r, int digits) {
    json primes = json::array();
    for (const PrimeComparison& c : r.hp) {
        primes.push_back({{"prime", c.prime.str()},
                          {"predicted", c.predicted.str()},
                          {"measured", optional_number(c.measured)},
                          {"deviation", optional_number(c.deviation)},
                          {"bound_only", c.bound_only}});
    }
    json out = {{"source", r.source},
                {"period", r.period},
                {"analysed_map", to_json(r.analysed_map)},
                {"z0", r.z0 ? to_json(*r.z0) : json(nullptr)},
                {"horizon", r.horizon},
                {"h_p", std::move(primes)},
                {"h", to_json(r.h, digits)},
                {"measured_h", optional_number(r.measured_h)},
                {"deviation_h", optional_number(r.deviation_h)},
                {"notes", r.notes},
                {"caveat", "predictions hold for generic z0; exceptional initial points such as eigenline "
                           "points are not detected"}};
    if (r.island) out["island"] = to_json(*r.island, digits);
    return out;
}

json to_json(const PhaseModule& m) {
    json primes = json::array();
    for (const Prime& p : m.primes) primes.push_back(p.str());
    json gens = json::array();
    for (const Rational& g : m.generators) gens.push_back(g.str());
    return {{"primes", std::move(primes)},
            {"N", m.N.get_str()},
            {"generators", std::move(gens)},
            {"d", big_list(m.d)},
            {"d_prime", big_list(m.d_prime)},
            {"module", m.describe()}};
}

}  // namespace arith_orbit
