#include "arith_orbit/map_config.hpp"

#include "arith_orbit/error.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

namespace arith_orbit {

using nlohmann::json;

std::unique_ptr<Orbit> make_orbit(const AnyMap& map, const PlanePoint& z0) {
    if (const auto* f = std::get_if<PiecewiseMap>(&map)) return std::make_unique<PiecewiseOrbit>(*f, z0);
    return std::make_unique<AffineOrbit>(std::get<AffineMap2>(map), z0);
}

namespace {

void require_fields(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* name : allowed) known = known || key == name;
        if (!known) throw ConfigError(where + ": unknown field \"" + key + "\"");
    }
    for (const char* name : allowed)
        if (!obj.contains(name)) throw ConfigError(where + ": missing field \"" + std::string(name) + "\"");
}

Rational rational_field(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": rationals must be strings");
    try {
        return Rational::parse(v.get<std::string>());
    } catch (const ConfigError& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

std::optional<Rational> bound_field(const json& obj, const char* key, const char* infinity, const std::string& where) {
    const json& v = obj.at(key);
    if (v.is_string() && v.get<std::string>() == infinity) return std::nullopt;
    return rational_field(obj, key, where);
}

bool bool_field(const json& obj, const char* key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return v.get<bool>();
}

Rational rational_value(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": rationals must be strings");
    return Rational::parse(v.get<std::string>());
}

PiecewiseMap parse_strip(const json& doc) {
    require_fields(doc, "map", {"kind", "d", "pieces"});
    const json& list = doc.at("pieces");
    if (!list.is_array()) throw ConfigError("map.pieces: expected an array");
    std::vector<StripPiece> pieces;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "map.pieces[" + std::to_string(i) + "]";
        const json& p = list[i];
        require_fields(p, where, {"left", "right", "includes_left", "includes_right", "a", "b"});
        pieces.push_back({bound_field(p, "left", "-inf", where), bound_field(p, "right", "inf", where),
                          bool_field(p, "includes_left", where), bool_field(p, "includes_right", where),
                          rational_field(p, "a", where), rational_field(p, "b", where)});
    }
    return PiecewiseMap(std::move(pieces), rational_field(doc, "d", "map"));
}

AffineMap2 parse_affine(const json& doc) {
    require_fields(doc, "map", {"kind", "matrix", "translation"});
    const json& m = doc.at("matrix");
    const json& s = doc.at("translation");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2)
        throw ConfigError("map.matrix: expected a 2x2 array");
    if (!s.is_array() || s.size() != 2) throw ConfigError("map.translation: expected two entries");
    Matrix2 linear{rational_value(m[0][0], "map.matrix"), rational_value(m[0][1], "map.matrix"),
                   rational_value(m[1][0], "map.matrix"), rational_value(m[1][1], "map.matrix")};
    PlanePoint shift{rational_value(s[0], "map.translation"), rational_value(s[1], "map.translation")};
    try {
        return AffineMap2(std::move(linear), std::move(shift));
    } catch (const PreconditionError& e) {
        throw ConfigError(std::string("map.matrix: ") + e.what());
    }
}

}  // namespace

AnyMap parse_map_config(const json& doc) {
    if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
        throw ConfigError("map: missing string field \"kind\"");
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "strip") return parse_strip(doc);
    if (kind == "affine") return parse_affine(doc);
    throw ConfigError("map.kind: unknown kind \"" + kind + "\" (expected strip or affine)");
}

AnyMap load_map_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open map config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_map_config(doc);
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const PlanePoint& z) { return json::array({z.x.str(), z.y.str()}); }

json to_json(const Matrix2& m) {
    return json::array({json::array({m.m11.str(), m.m12.str()}), json::array({m.m21.str(), m.m22.str()})});
}

json to_json(const AffineMap2& map) {
    return {{"kind", "affine"}, {"matrix", to_json(map.linear())}, {"translation", to_json(map.translation())}};
}

json map_to_json(const AnyMap& map) {
    if (const auto* a = std::get_if<AffineMap2>(&map)) return to_json(*a);
    const PiecewiseMap& f = std::get<PiecewiseMap>(map);
    json pieces = json::array();
    for (const StripPiece& p : f.pieces()) {
        pieces.push_back({{"left", p.left ? p.left->str() : "-inf"},
                          {"right", p.right ? p.right->str() : "inf"},
                          {"includes_left", p.includes_left},
                          {"includes_right", p.includes_right},
                          {"a", p.a.str()},
                          {"b", p.b.str()}});
    }
    return {{"kind", "strip"}, {"d", f.d().str()}, {"pieces", std::move(pieces)}};
}

}  // namespace arith_orbit
