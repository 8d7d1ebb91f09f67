#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "family.hpp"

namespace einlab {

struct BaseManifold {
    int n = 1;
    int p = 2;
    double vol_base = 2.0 * std::numbers::pi;
};

struct NegativeSpec {
    double s1 = 1.0;
    double lambda = 0.5;  // 1 selects the psi = 0 family
    double eps = 0.0;     // <= 0
    std::int64_t q1 = 0;
    std::int64_t q2 = 1;
    int psi_sign = 1;
    double lambda_floor = 1e-6;
};

// Left-end quantization ratio whose value must equal |q2|; increasing in kappa.
double kappa_ratio(const NegativeSpec& spec, const BaseManifold& base, double kappa);

double solve_kappa(const NegativeSpec& spec, const BaseManifold& base);

// Validates, solves for kappa, assembles the coefficients and re-verifies
// consistency, the left collapse and positivity on (s1, 1e6 s1]. Throws on any failure.
Family build_nonpositive(const NegativeSpec& spec, const BaseManifold& base);

struct PositiveSpec {
    int n = 1;
    int p = 2;
    std::int64_t q1 = 2;
    std::int64_t q2 = 1;
    double vol_base = 2.0 * std::numbers::pi;
};

struct XYPoint {
    double x = 0.0;
    double y = 0.0;
    bool region_ok = false;
};

bool in_region(double x, double y, int n);

// A_0 .. A_n.
std::vector<double> a_polys(double x, double y, int n);

struct QSquared {
    double q1sq = 0.0;
    double q2sq = 0.0;
};

// Throws OutOfModel when A_n <= 0.
QSquared q_squared(double x, double y, int n, int p);

struct XYSolution {
    XYPoint point;
    double line_offset = 0.0;  // a with y = x + a
    double residual1 = 0.0;    // |q1^2 - L1^2| / L1^2
    double residual2 = 0.0;
    bool newton_fallback = false;
    std::vector<XYPoint> path;  // points visited by the outer continuation
    double path_min_a = 0.0;    // smallest A_m seen along the path
};

// Largest x in (0, 1 - a) with q2^2(x, x + a) = target, scanning down from the
// y = 1 edge; empty if no crossing occurs before leaving the region.
std::optional<double> theta_on_line(double target, double a, int n, int p);

XYSolution solve_xy(std::int64_t l1, std::int64_t l2, int n, int p);

Family build_positive(const PositiveSpec& spec);

}  // namespace einlab
