#include "diagnostics.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"
#include "radial.hpp"

namespace einlab {
namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

void require_cce_normalized(const Family& family) {
    const double expected = -(2.0 * family.params.n + 2.0);
    if (family.params.eps != expected)
        throw Error(ErrorCode::NotCce, "geodesic defining function needs eps = -(2n+2)");
}

// Solves h(log s) = 0 for an h that is increasing in s, starting from s = lo.
template <class H>
double increasing_root_in_log(H h, double lo) {
    double a = std::log(lo);
    double b = a + 1.0;
    for (int i = 0; h(b) < 0.0; ++i) {
        if (i > 200) throw Error(ErrorCode::Solver, "radial inversion failed to bracket");
        a = b;
        b += 1.0 + (b - std::log(lo));
    }
    std::uintmax_t iters = 200;
    const auto [x, y] = toms748_solve(h, a, b, eps_tolerance<double>(std::numeric_limits<double>::digits - 3), iters);
    return std::exp(0.5 * (x + y));
}

std::vector<double> log_space(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(n - 1));
    return out;
}

}  // namespace

BoundaryMetric boundary_metric(const Family& family) {
    const ModelParams& pr = family.params;
    if (!(pr.eps < 0.0)) throw Error(ErrorCode::NotCce, "boundary metric exists only for eps < 0");
    const ProfileFunctions f = profile_functions(pr, family.coeffs);
    const double q1 = static_cast<double>(pr.q1);
    const double q2 = static_cast<double>(pr.q2);

    BoundaryMetric bm;
    bm.alpha_lead = f.alpha.coefficient(2);
    bm.delta_bar = f.delta.coefficient(1);
    bm.u_bar = {f.u1.coefficient(1), f.u2.coefficient(1)};
    bm.c_bar_sq = f.beta.coefficient(1);
    const double u1 = bm.u_bar[0];
    const double u2 = bm.u_bar[1];
    const double a = bm.alpha_lead;
    bm.b_bar.b11 = (u1 * u1 + q2 * q2 * a) / bm.delta_bar;
    bm.b_bar.b12 = (u1 * u2 - q1 * q2 * a) / bm.delta_bar;
    bm.b_bar.b22 = (u2 * u2 + q1 * q1 * a) / bm.delta_bar;
    bm.b_bar.positive_definite = bm.b_bar.b11 > 0.0 && bm.b_bar.det() > 0.0;
    return bm;
}

double geodesic_zeta(const Family& family, double s, const QuadratureOptions& opt) {
    require_cce_normalized(family);
    const double s1 = family.domain.s1;
    if (s < s1) throw Error(ErrorCode::Domain, "zeta(s) requires s >= s1");
    const ProfileFunctions f = profile_functions(family.params, family.coeffs);
    const PowerSum rest = f.alpha.without(2);  // alpha - 4 s^2
    const auto integrand = [&](double tau, double dist) {
        const double a = f.alpha.increment(s1, dist);
        if (!(a > 0.0)) throw Error(ErrorCode::Domain, "alpha <= 0 inside the integration range");
        const double ra = std::sqrt(a);
        return rest(tau) / (2.0 * tau * ra * (ra + 2.0 * tau));
    };
    return integrate(integrand, s1, s, Singular::Left, opt);
}

double geodesic_sigma(const Family& family, double s, const QuadratureOptions& opt) {
    return std::exp(geodesic_zeta(family, s, opt)) / std::sqrt(s);
}

double s_of_sigma(const Family& family, double sigma) {
    const double s1 = family.domain.s1;
    const double top = 1.0 / std::sqrt(s1);
    if (!(sigma > 0.0 && sigma <= top)) throw Error(ErrorCode::Domain, "sigma must lie in (0, s1^(-1/2)]");
    if (sigma == top) return s1;
    const double target = std::log(sigma);
    // log sigma = zeta - log(s)/2 is decreasing in s.
    return increasing_root_in_log(
        [&](double ls) {
            const double s = std::max(std::exp(ls), s1);
            return target - (geodesic_zeta(family, s) - 0.5 * std::log(s));
        },
        s1);
}

double volume_to(const Family& family, double s) {
    const ModelParams& pr = family.params;
    const double c = 4.0 * std::numbers::pi * std::numbers::pi * pr.vol_base;
    return c * std::pow(family.coeffs.kappa, pr.n) / (pr.n + 1.0) *
           (std::pow(s, pr.n + 1) - std::pow(family.domain.s1, pr.n + 1));
}

LogFit fit_log_term(const std::vector<double>& deltas, const std::vector<double>& values, int n, int terms) {
    const std::size_t m = deltas.size();
    if (m != values.size() || m < static_cast<std::size_t>(terms) + 2)
        throw Error(ErrorCode::Precondition, "log-term fit needs more samples than unknowns");
    double dmax = 0.0;
    for (double d : deltas) dmax = std::max(dmax, d);

    // Work in u = delta / dmax; the log dmax part of the log column folds into a_(n+1).
    const int cols = terms + 1;
    Eigen::MatrixXd A(static_cast<Eigen::Index>(m), cols);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const double u = deltas[i] / dmax;
        for (int k = 0; k < terms; ++k) A(static_cast<Eigen::Index>(i), k) = std::pow(u, 2 * k);
        A(static_cast<Eigen::Index>(i), terms) = std::pow(u, 2 * n + 2) * std::log(u);
        rhs(static_cast<Eigen::Index>(i)) = values[i];
    }
    const Eigen::VectorXd norms = A.colwise().norm();
    const Eigen::MatrixXd scaled = A * norms.cwiseInverse().asDiagonal();
    const Eigen::VectorXd z = scaled.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd coef = z.cwiseQuotient(norms);

    LogFit fit;
    const double dscale = std::pow(dmax, 2 * n + 2);
    fit.log_coeff = coef(terms) / dscale;
    for (int k = 0; k < terms; ++k) {
        double a = coef(k) / std::pow(dmax, 2 * k);
        if (k == n + 1) a -= fit.log_coeff * std::log(dmax);
        fit.power_coeffs.push_back(a);
    }
    fit.relative_log = std::abs(fit.log_coeff) / std::abs(fit.power_coeffs[0]);
    fit.rms_residual = std::sqrt((A * coef - rhs).squaredNorm() / static_cast<double>(m));
    return fit;
}

double s_of_t(const Family& family, double t) {
    if (family.domain.s2) throw Error(ErrorCode::Unsupported, "radial inversion is for complete families");
    if (!(t > 0.0)) throw Error(ErrorCode::Domain, "t must be positive");
    const double s1 = family.domain.s1;
    return increasing_root_in_log([&](double ls) { return t_of_s(family, std::max(std::exp(ls), s1)) - t; }, s1);
}

VolumeReport volume_report(const Family& family, const VolumeOptions& opt) {
    const ModelParams& pr = family.params;
    VolumeReport rep;
    if (family.domain.s2) {
        rep.volumes.push_back(volume_to(family, *family.domain.s2));
        return rep;
    }
    if (pr.eps < 0.0) {
        rep.cce = true;
        const double dmax = opt.delta_max_rel / std::sqrt(family.domain.s1);
        rep.cutoffs = log_space(dmax * std::pow(10.0, -opt.decades), dmax, opt.ncutoffs);
        const double c = 4.0 * std::numbers::pi * std::numbers::pi * pr.vol_base;
        const double unit = c * std::pow(family.coeffs.kappa, pr.n) / (pr.n + 1.0);
        for (double d : rep.cutoffs) {
            const double s = s_of_sigma(family, d);
            const double vol = volume_to(family, s);
            rep.volumes.push_back(vol);
            rep.scaled_volumes.push_back(std::pow(d, 2 * pr.n + 2) * vol / unit);
        }
        rep.fit = fit_log_term(rep.cutoffs, rep.scaled_volumes, pr.n, opt.terms);
        return rep;
    }
    rep.expected_exponent = 2.0 * pr.n + 2.0;
    const std::vector<double> grid = log_space(s_of_t(family, opt.t_lo), s_of_t(family, opt.t_hi), opt.growth_points);
    rep.radii = t_on_grid(family, grid);
    for (double s : grid) rep.volumes.push_back(volume_to(family, s));
    rep.growth_exponent = loglog_slope(rep.radii, rep.volumes);
    return rep;
}

double q_curvature4(const BoundaryMetric& boundary, const ModelParams& params) {
    if (params.n != 1) throw Error(ErrorCode::Unsupported, "Q-curvature formula is for 4-dimensional boundaries");
    const FiberRicci ric = fiber_ricci(boundary.b_bar, std::sqrt(boundary.c_bar_sq), params);
    const double mult_h = 2.0 * params.n;
    const double r = ric.eigenvalues[0] + ric.eigenvalues[1] + mult_h * ric.eigenvalues[2];
    const double ric2 = ric.eigenvalues[0] * ric.eigenvalues[0] + ric.eigenvalues[1] * ric.eigenvalues[1] +
                        mult_h * ric.eigenvalues[2] * ric.eigenvalues[2];
    // Constant coefficients, so the Laplacian of R drops out.
    return (r * r - 3.0 * ric2) / 6.0;
}

double mixed_curvature_at(const Family& family, double s) {
    const ProfileFunctions f = profile_functions(family.params, family.coeffs);
    return -f.alpha.euler_minus_identity()(s) / (4.0 * s * s);
}

double shape_norm_at(const Family& family, double s) {
    const ModelParams& pr = family.params;
    const ProfileFunctions f = profile_functions(pr, family.coeffs);
    const double q1 = static_cast<double>(pr.q1);
    const double q2 = static_cast<double>(pr.q2);
    const Jet al = f.alpha.jet(s, 1);
    const Jet de = f.delta.jet(s, 1);
    const Jet w = q2 * f.u1.jet(s, 1) - q1 * f.u2.jet(s, 1);
    const double m = q1 * q1 + q2 * q2;
    // B in the frame (q, q-perp): Delta on the diagonal, W/Delta shear and
    // g = alpha m^2 / Delta across, which keeps trace((B' B^-1)^2) free of cancellation.
    const double ld = de.d1 / de.v;
    const double lg = al.d1 / al.v - ld;
    const double g = al.v * m * m / de.v;
    const double dr = (w.d1 * de.v - w.v * de.d1) / (de.v * de.v);
    const double tr_phi2 = ld * ld + lg * lg + 2.0 * dr * dr * de.v / g;
    const double cc = std::sqrt(al.v) / (2.0 * s);  // c'/c
    return 0.25 * al.v * tr_phi2 + 2.0 * pr.n * cc * cc;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t m = x.size();
    if (m < 2 || y.size() != m) throw Error(ErrorCode::Precondition, "slope fit needs matching samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mx += std::log(x[i]);
        my += std::log(std::abs(y[i]));
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(std::abs(y[i])) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

DecayReport decay_report(const Family& family, const DecayOptions& opt) {
    if (family.params.eps != 0.0) throw Error(ErrorCode::Unsupported, "decay diagnostics are for Ricci-flat families");
    const ModelParams& pr = family.params;
    const ProfileFunctions f = profile_functions(pr, family.coeffs);
    DecayReport rep;
    const std::vector<double> grid = log_space(s_of_t(family, opt.t_lo), s_of_t(family, opt.t_hi), opt.npoints);
    rep.radii = t_on_grid(family, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = grid[i];
        const double t = rep.radii[i];
        rep.mixed_curvature.push_back(mixed_curvature_at(family, s));
        rep.shape_norm.push_back(shape_norm_at(family, s));
        const ProfileSample ps = sample_profile(pr, f, s, 0);
        const double t2 = t * t;
        rep.cone_det_numeric.push_back((ps.b11.v * ps.b22.v - ps.b12.v * ps.b12.v) / (t2 * t2));
        if (i + 1 == grid.size()) {
            rep.cone_numeric = {ps.b11.v / t2, ps.b12.v / t2, ps.b22.v / t2, false};
            rep.cone_numeric.positive_definite = rep.cone_numeric.b11 > 0.0 && rep.cone_numeric.det() > 0.0;
        }
    }
    rep.mixed_exponent = loglog_slope(rep.radii, rep.mixed_curvature);
    rep.shape_exponent = loglog_slope(rep.radii, rep.shape_norm);

    const double k2 = 4.0 * family.coeffs.kappa * family.coeffs.kappa;
    const double u1 = f.u1.coefficient(1);
    const double u2 = f.u2.coefficient(1);
    rep.cone = {u1 * u1 / k2, u1 * u2 / k2, u2 * u2 / k2, false};
    rep.cone_det = rep.cone.det();
    return rep;
}

}  // namespace einlab
