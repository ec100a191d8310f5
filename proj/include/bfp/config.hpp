#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bfp/comparison.hpp"
#include "bfp/selfmap.hpp"
#include "bfp/space.hpp"

namespace bfp {

/// Thrown by parse_config; carries the offending line when known.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line(line) {}
    int line;
};

/// A parsed and validated run configuration.
///
/// Config document format: [space] / [map] / [phi] / [run] sections of
/// key = value lines; '#' starts a comment; vectors are bracketed
/// comma-separated lists.
struct RunConfig {
    // [space]
    std::string space_kind = "euclidean";
    std::size_t dim = 1;
    double q = 2.0;                       // snowflake exponent
    double p = 0.5;                       // lp_quasi exponent
    double box = 10.0;                    // sampler half-width
    std::optional<double> s_override;

    // [map]
    std::string map_kind = "scalar_affine";
    std::vector<double> map_a = {0.5};    // scalar or row-major matrix
    std::vector<double> map_b = {0.0};    // scalar or vector
    std::vector<double> map_c;            // constant point

    // [phi]
    std::string phi_kind = "linear";
    double phi_c = 0.5;
    double phi_q = 1.0;
    bool phi_unchecked = false;

    // [run]
    std::vector<double> x0 = {0.0};
    std::vector<double> epsilons = {0.1};
    double tol = 1e-10;
    std::uint64_t max_iter = 10000;
    std::uint64_t horizon = 64;
    std::uint64_t seed = 42;
    std::uint64_t samples = 100000;
    double margin_scale = 1e-12;

    BMetricSpace build_space() const;
    SelfMap build_map() const;
    ComparisonFunction build_phi() const;
    MarginPolicy margin() const { return MarginPolicy{margin_scale}; }

    bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a config document.  Unknown sections or keys
/// are rejected; defaults are filled for omitted keys.
RunConfig parse_config(const std::string& text);

/// Inverse of parse_config for valid configs (round-trip stable).
std::string serialize_config(const RunConfig& cfg);

}  // namespace bfp
