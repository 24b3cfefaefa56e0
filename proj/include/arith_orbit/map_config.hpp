#pragma once

#include "arith_orbit/affine.hpp"
#include "arith_orbit/orbit.hpp"
#include "arith_orbit/piecewise.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <variant>

namespace arith_orbit {

using AnyMap = std::variant<PiecewiseMap, AffineMap2>;

std::unique_ptr<Orbit> make_orbit(const AnyMap& map, const PlanePoint& z0);

/// Reads a map config. Two kinds are accepted:
///
///   {"kind":"strip","d":"1","pieces":[{"left":"-inf","right":"-1",
///     "includes_left":false,"includes_right":false,"a":"3/2","b":"3/2"}, ...]}
///   {"kind":"affine","matrix":[["3/2","-1"],["1","0"]],"translation":["0","0"]}
///
/// Rationals are JSON strings; "-inf" and "inf" mark unbounded strip ends.
/// Unknown fields, missing fields and non-partitioning pieces throw ConfigError.
AnyMap parse_map_config(const nlohmann::json& doc);

/// parse_map_config on a file; unreadable or non-JSON files throw IoError /
/// ConfigError respectively.
AnyMap load_map_config(const std::filesystem::path& path);

nlohmann::json map_to_json(const AnyMap& map);

/// Exact string forms used by every report.
nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const PlanePoint& z);
nlohmann::json to_json(const Matrix2& m);
nlohmann::json to_json(const AffineMap2& map);

}  // namespace arith_orbit
