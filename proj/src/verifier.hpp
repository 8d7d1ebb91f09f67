#pragma once

#include <array>
#include <string>
#include <vector>

#include "family.hpp"

namespace einlab {

struct FiberRicci {
    std::array<double, 3> eigenvalues{};  // vertical e1, vertical e2, horizontal (multiplicity 2n)
    double scalar = 0.0;
};

// Throws Domain if b is not symmetric positive definite or c <= 0.
FiberRicci fiber_ricci(const FiberMatrix& b, double c, const ModelParams& params);

struct ResidualReport {
    std::vector<double> grid;
    std::vector<double> res_hh;
    std::vector<double> res_ba;
    std::vector<double> res_se;  // max-abs entry of the 2x2 residual
    std::vector<double> structural_failures;  // grid points where B is not SPD
    double max_abs = 0.0;
};

ResidualReport einstein_residual(const ModelParams& params, const SolutionCoefficients& coeffs,
                                 const std::vector<double>& grid);

// Log-spaced when the range spans more than a decade, otherwise uniform; the
// ends are pulled in by `clip` relative to the interval scale.
std::vector<double> interior_grid(double lo, double hi, std::size_t npoints, double clip = 1e-6);

// Default verification grid for a family: (s1, s2) or (s1, 1e3 * s1].
std::vector<double> family_grid(const Family& family, std::size_t npoints = 200, double clip = 1e-6);

enum class End { Left, Right };

struct CollapseReport {
    End end = End::Left;
    double s_end = 0.0;
    double alpha_at_end = 0.0;  // relative to the size of the terms of alpha
    double u_at_end = 0.0;      // relative to the size of the terms of U
    double slope = 0.0;
    bool pass = false;
};

CollapseReport collapse_check(const ModelParams& params, const SolutionCoefficients& coeffs, End end,
                              double s_end, double tol = 1e-9);

struct DomainScanReport {
    std::size_t npoints = 0;
    std::size_t alpha_failures = 0;
    std::size_t delta_failures = 0;
    std::size_t spd_failures = 0;
    std::size_t fz_failures = 0;  // compact families only
    double min_alpha = 0.0;
    bool pass = false;
    std::vector<double> failing_points;
};

// Samples strictly inside [lo, hi]; for compact families also checks that the
// auxiliary polynomial 4 z^(n+2) - 2p/(kappa(n+1)) z^(n+1) - c1 z stays below c2 < 0.
DomainScanReport domain_scan(const ModelParams& params, const SolutionCoefficients& coeffs, double lo, double hi,
                             std::size_t npoints, bool compact_family);

struct VerificationReport {
    ResidualReport residual;
    double residual_tol = 0.0;
    std::vector<CollapseReport> collapse;
    DomainScanReport scan;
    double psi_residual_rel = 0.0;  // generic families only
    bool residual_pass = false;
    bool psi_pass = true;
    bool all_pass = false;
};

struct VerifyOptions {
    std::size_t grid_points = 200;
    double clip = 1e-6;
    double residual_rel_tol = 1e-8;
    double collapse_tol = 1e-9;
    double identity_tol = 1e-9;
    std::size_t scan_points = 200;
};

VerificationReport verify_family(const Family& family, const VerifyOptions& opt = {});

}  // namespace einlab
