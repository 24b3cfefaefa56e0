#pragma once

#include "arith_orbit/prime.hpp"
#include "arith_orbit/rational.hpp"

#include <mpfr.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace arith_orbit {

enum ExitStatus : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_precondition_failure = 3,
    exit_io_error = 4,
};

/// Parsed command line. Field validity beyond parsing is checked by dispatch.
struct RunConfig {
    std::string command;  // orbit, trace, scan, variation, island, predict, phase-module, enumerate
    std::optional<std::string> map_path;
    std::optional<PlanePoint> z0;
    std::optional<std::uint64_t> T;
    std::vector<Prime> primes;  // --p and --primes combined, in order, without repeats
    std::optional<std::string> out;
    mpfr_prec_t precision = 128;
    std::vector<std::uint64_t> horizons;
    std::size_t count = 50;
    std::optional<std::pair<PlanePoint, PlanePoint>> segment;
    std::uint64_t seed = 0;
    int digits = 12;
    std::uint64_t window = 1000;
    std::optional<std::vector<std::size_t>> code;
    std::uint32_t N = 1;
    unsigned threads = 0;
};

/// Parses argv into a RunConfig. Throws ConfigError on any malformed or
/// unknown argument; `--help` prints usage to `out` and returns nullopt.
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Runs one command, writing the artifact to config.out or `out`.
/// Throws ConfigError, PreconditionError or IoError.
void dispatch(const RunConfig& config, std::ostream& out);

/// parse_command_line + dispatch with errors mapped to ExitStatus and
/// reported on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arith_orbit
