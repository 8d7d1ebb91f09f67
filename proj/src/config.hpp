#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "diagnostics.hpp"
#include "quadrature.hpp"
#include "verifier.hpp"

namespace einlab {

enum class OutputFormat { Json, Csv };

struct RunConfig {
    double residual_tol = 1e-8;     // relative to 1 + |eps|
    double identity_tol = 1e-9;
    double derivative_tol = 1e-6;
    double collapse_tol = 1e-9;
    double qcurv_tol = 1e-9;
    double log_term_tol = 1e-6;
    double exponent_rel_tol = 0.05;
    std::size_t grid_points = 200;
    std::size_t scan_points = 200;
    std::size_t profile_points = 200;
    double endpoint_clip = 1e-6;
    double quad_rel_tol = 1e-12;
    unsigned quad_max_depth = 15;
    double vol_base = 6.283185307179586;
    double lambda_floor = 1e-6;
    std::size_t log_fit_cutoffs = 20;
    int log_fit_terms = 8;
    double log_fit_delta_max = 0.5;
    OutputFormat output_format = OutputFormat::Json;

    [[nodiscard]] QuadratureOptions quadrature() const { return {quad_rel_tol, quad_max_depth}; }
    [[nodiscard]] VerifyOptions verify_options() const;
    [[nodiscard]] VolumeOptions volume_options() const;
};

// Environment variable naming a config file to load when none is given explicitly.
inline constexpr const char* kConfigEnvVar = "EINLAB_CONFIG";

// Throws Precondition for unknown keys or malformed values, then re-validates.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` lines; `#` starts a comment. Throws Io / Precondition.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Throws Precondition unless every tolerance is positive and grids have >= 10 points.
void validate(const RunConfig& cfg);

std::string to_text(const RunConfig& cfg);

// Value of one key in the same text form as to_text. Throws Precondition for unknown keys.
std::string get_setting(const RunConfig& cfg, const std::string& key);

}  // namespace einlab
