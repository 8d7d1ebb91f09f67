#pragma once

#include <array>
#include <vector>

#include "family.hpp"
#include "quadrature.hpp"
#include "verifier.hpp"

namespace einlab {

struct BoundaryMetric {
    FiberMatrix b_bar;           // leading s^1 coefficients of b_ij
    double c_bar_sq = 0.0;       // kappa
    double delta_bar = 0.0;      // leading s^1 coefficient of Delta
    std::array<double, 2> u_bar{};
    double alpha_lead = 0.0;     // lim alpha / s^2
};

// Throws NotCce for eps >= 0.
BoundaryMetric boundary_metric(const Family& family);

// zeta(s) = integral from s1 of 1/(2 tau) - alpha^(-1/2). Needs the CCE
// normalization eps = -(2n+2), otherwise the integral diverges logarithmically.
double geodesic_zeta(const Family& family, double s, const QuadratureOptions& opt = {});
double geodesic_sigma(const Family& family, double s, const QuadratureOptions& opt = {});

// Inverse of sigma on (0, s1^(-1/2)].
double s_of_sigma(const Family& family, double sigma);

// Volume of {s1 <= s' <= s}: C kappa^n/(n+1) (s^(n+1) - s1^(n+1)), C = 4 pi^2 vol_base.
double volume_to(const Family& family, double s);

struct LogFit {
    std::vector<double> power_coeffs;  // a_k of delta^(2k), k = 0..terms-1
    double log_coeff = 0.0;            // b of delta^(2n+2) log delta
    double relative_log = 0.0;         // |b| / |a_0|
    double rms_residual = 0.0;
};

// Least squares on f(delta) = sum_k a_k delta^(2k) + b delta^(2n+2) log delta.
LogFit fit_log_term(const std::vector<double>& deltas, const std::vector<double>& values, int n, int terms);

struct VolumeOptions {
    std::size_t ncutoffs = 20;
    double decades = 2.0;
    double delta_max_rel = 0.5;  // largest cutoff as a fraction of sigma(s1)
    int terms = 8;
    double t_lo = 1e2;            // Ricci-flat growth window
    double t_hi = 1e4;
    std::size_t growth_points = 20;
};

struct VolumeReport {
    bool cce = false;
    // CCE: cutoffs, renormalized volumes delta^(2n+2) Vol (n+1)/(C kappa^n), fit.
    std::vector<double> cutoffs;
    std::vector<double> scaled_volumes;
    LogFit fit;
    // Ricci-flat: growth exponent of Vol against t.
    std::vector<double> radii;
    std::vector<double> volumes;
    double growth_exponent = 0.0;
    double expected_exponent = 0.0;
};

VolumeReport volume_report(const Family& family, const VolumeOptions& opt = {});

// Q of the 4-dimensional boundary metric. Throws Unsupported for n != 1.
double q_curvature4(const BoundaryMetric& boundary, const ModelParams& params);

// Inverse of t(s) for complete families.
double s_of_t(const Family& family, double t);

struct DecayOptions {
    double t_lo = 1e2;
    double t_hi = 1e4;
    std::size_t npoints = 20;
};

struct DecayReport {
    std::vector<double> radii;
    std::vector<double> mixed_curvature;  // -c''/c
    std::vector<double> shape_norm;       // trace(L^2)
    double mixed_exponent = 0.0;
    double shape_exponent = 0.0;
    FiberMatrix cone;                     // closed-form limit of b_ij / t^2
    FiberMatrix cone_numeric;             // b_ij(t) / t^2 at the largest radius
    double cone_det = 0.0;
    std::vector<double> cone_det_numeric; // det(b(t)/t^2) along the radii
};

// Throws Unsupported unless eps == 0.
DecayReport decay_report(const Family& family, const DecayOptions& opt = {});

// -c''/c and trace(L^2) at a single s.
double mixed_curvature_at(const Family& family, double s);
double shape_norm_at(const Family& family, double s);

// Slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace einlab
