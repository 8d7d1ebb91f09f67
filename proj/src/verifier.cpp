#include "verifier.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace einlab {
namespace {

using Real = long double;

struct Mat2 {
    Real a, b, c, d;  // [[a, b], [c, d]]
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2 sub(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 add(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 scale(Real k, const Mat2& x) { return {k * x.a, k * x.b, k * x.c, k * x.d}; }

struct PointResidual {
    Real hh, ba, se;
};

PointResidual residual_at(const ModelParams& params, const BasicProfileSample<Real>& ps) {
    const Real n = params.n;
    const Real p = params.p;
    const Real eps = params.eps;
    const Real q1 = static_cast<Real>(params.q1);
    const Real q2 = static_cast<Real>(params.q2);

    const auto& al = ps.alpha;
    const auto& be = ps.beta;
    const Real bb = be.d1 / be.v;  // beta'/beta
    const Real bbb = be.d2 / be.v; // beta''/beta

    const Mat2 B{ps.b11.v, ps.b12.v, ps.b12.v, ps.b22.v};
    const Mat2 dB{ps.b11.d1, ps.b12.d1, ps.b12.d1, ps.b22.d1};
    const Mat2 ddB{ps.b11.d2, ps.b12.d2, ps.b12.d2, ps.b22.d2};
    const Real det = B.a * B.d - B.b * B.c;
    const Mat2 inv{B.d / det, -B.b / det, -B.c / det, B.a / det};
    const Mat2 phi = mul(dB, inv);
    const Mat2 dphi = sub(mul(ddB, inv), mul(phi, phi));
    const Real det_dB = dB.a * dB.d - dB.b * dB.c;

    PointResidual r{};
    r.hh = n * al.v * (-bbb + Real(0.5) * bb * bb) - n * Real(0.5) * al.d1 * bb - Real(0.5) * al.d2 +
           Real(0.5) * det_dB - eps;
    r.ba = Real(0.5) * al.v * (-bbb - (n - Real(1)) * bb * bb) - Real(0.5) * al.d1 * bb + p / be.v -
           ps.delta.v / (Real(2) * be.v * be.v) - eps;

    const Real k = n / (Real(2) * be.v * be.v);
    const Mat2 uq{k * ps.u1.v * q1, k * ps.u1.v * q2, k * ps.u2.v * q1, k * ps.u2.v * q2};
    Mat2 se = scale(Real(0.5) * al.v, sub(scale(-n * bb, phi), dphi));
    se = add(se, scale(-Real(0.5) * al.d1, phi));
    se = add(se, uq);
    se.a -= eps;
    se.d -= eps;
    r.se = std::max({std::abs(se.a), std::abs(se.b), std::abs(se.c), std::abs(se.d)});
    return r;
}

}  // namespace

FiberRicci fiber_ricci(const FiberMatrix& b, double c, const ModelParams& params) {
    if (!(c > 0.0)) throw Error(ErrorCode::Domain, "base scale c must be positive");
    if (!(b.b11 > 0.0 && b.det() > 0.0)) throw Error(ErrorCode::Domain, "fiber matrix is not positive definite");
    const double q1 = static_cast<double>(params.q1);
    const double q2 = static_cast<double>(params.q2);
    const double delta = q1 * q1 * b.b11 + 2.0 * q1 * q2 * b.b12 + q2 * q2 * b.b22;
    const double c2 = c * c;
    const double c4 = c2 * c2;
    FiberRicci out;
    out.eigenvalues = {params.n * delta / (2.0 * c4), 0.0, params.p / c2 - delta / (2.0 * c4)};
    out.scalar = (2.0 * params.n / c2) * (params.p - delta / (4.0 * c2));
    return out;
}

ResidualReport einstein_residual(const ModelParams& params, const SolutionCoefficients& coeffs,
                                 const std::vector<double>& grid) {
    const ProfileFunctions f = profile_functions(params, coeffs);
    ResidualReport rep;
    rep.grid = grid;
    for (double s : grid) {
        if (!(s > 0.0)) throw Error(ErrorCode::Domain, "residual grid must be positive");
        const auto ps = sample_profile<Real>(params, f, static_cast<Real>(s), 2);
        const Real det = ps.b11.v * ps.b22.v - ps.b12.v * ps.b12.v;
        if (!ps.b_defined || !(ps.b11.v > 0) || !(det > 0)) {
            rep.structural_failures.push_back(s);
            rep.res_hh.push_back(NAN);
            rep.res_ba.push_back(NAN);
            rep.res_se.push_back(NAN);
            continue;
        }
        const PointResidual r = residual_at(params, ps);
        rep.res_hh.push_back(static_cast<double>(r.hh));
        rep.res_ba.push_back(static_cast<double>(r.ba));
        rep.res_se.push_back(static_cast<double>(r.se));
        rep.max_abs = std::max({rep.max_abs, static_cast<double>(std::abs(r.hh)),
                                static_cast<double>(std::abs(r.ba)), static_cast<double>(r.se)});
    }
    return rep;
}

std::vector<double> interior_grid(double lo, double hi, std::size_t npoints, double clip) {
    if (!(hi > lo) || npoints < 2) throw Error(ErrorCode::Domain, "grid needs lo < hi and at least two points");
    std::vector<double> g(npoints);
    if (lo > 0.0 && hi / lo > 10.0) {
        const double a = std::log(lo * (1.0 + clip));
        const double b = std::log(hi);
        for (std::size_t i = 0; i < npoints; ++i)
            g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(npoints - 1));
        g.front() = lo * (1.0 + clip);
        g.back() = hi;
    } else {
        const double pad = clip * (hi - lo);
        const double a = lo + pad;
        const double b = hi - pad;
        for (std::size_t i = 0; i < npoints; ++i)
            g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(npoints - 1);
    }
    return g;
}

std::vector<double> family_grid(const Family& family, std::size_t npoints, double clip) {
    const double s1 = family.domain.s1;
    return family.domain.s2 ? interior_grid(s1, *family.domain.s2, npoints, clip)
                            : interior_grid(s1, 1e3 * s1, npoints, clip);
}

CollapseReport collapse_check(const ModelParams& params, const SolutionCoefficients& coeffs, End end,
                              double s_end, double tol) {
    if (!(s_end > 0.0)) throw Error(ErrorCode::Domain, "collapse point must be positive");
    const ProfileFunctions f = profile_functions(params, coeffs);
    const ProfileSample ps = sample_profile(params, f, s_end, 1);
    if (!(ps.delta.v > 0.0)) throw Error(ErrorCode::DegenerateFiber, "Delta <= 0 at the collapse point");

    const bool left = end == End::Left;
    const PowerSum& u = left ? f.u1 : f.u2;
    const double uval = left ? ps.u1.v : ps.u2.v;
    const double qabs = std::abs(static_cast<double>(left ? params.q2 : params.q1));

    CollapseReport r;
    r.end = end;
    r.s_end = s_end;
    const double amag = f.alpha.magnitude(s_end);
    const double umag = u.magnitude(s_end);
    r.alpha_at_end = amag > 0.0 ? ps.alpha.v / amag : ps.alpha.v;
    r.u_at_end = umag > 0.0 ? uval / umag : uval;
    r.slope = qabs * ps.alpha.d1 / (2.0 * std::sqrt(ps.delta.v));
    const double target = left ? 1.0 : -1.0;
    r.pass = std::abs(r.alpha_at_end) <= tol && std::abs(r.u_at_end) <= tol && std::abs(r.slope - target) <= tol;
    return r;
}

DomainScanReport domain_scan(const ModelParams& params, const SolutionCoefficients& coeffs, double lo, double hi,
                             std::size_t npoints, bool compact_family) {
    const ProfileFunctions f = profile_functions(params, coeffs);
    DomainScanReport rep;
    const std::vector<double> grid = interior_grid(lo, hi, npoints, 1e-6);
    rep.npoints = grid.size();
    rep.min_alpha = INFINITY;
    const double fz_lin = 2.0 * params.p / (coeffs.kappa * (params.n + 1.0));
    for (double s : grid) {
        const ProfileSample ps = sample_profile(params, f, s, 0);
        bool bad = false;
        rep.min_alpha = std::min(rep.min_alpha, ps.alpha.v);
        if (!(ps.alpha.v > 0.0)) { ++rep.alpha_failures; bad = true; }
        if (!(ps.delta.v > 0.0)) { ++rep.delta_failures; bad = true; }
        if (!ps.b_defined || !(ps.b11.v > 0.0) || !(ps.b11.v * ps.b22.v - ps.b12.v * ps.b12.v > 0.0)) {
            ++rep.spd_failures;
            bad = true;
        }
        if (compact_family) {
            const double fz = 4.0 * std::pow(s, params.n + 2) - fz_lin * std::pow(s, params.n + 1) - coeffs.c1 * s;
            if (!(fz < coeffs.c2 && coeffs.c2 < 0.0)) { ++rep.fz_failures; bad = true; }
        }
        if (bad) rep.failing_points.push_back(s);
    }
    rep.pass = rep.failing_points.empty();
    return rep;
}

VerificationReport verify_family(const Family& family, const VerifyOptions& opt) {
    const ModelParams& params = family.params;
    const SolutionCoefficients& coeffs = family.coeffs;
    VerificationReport rep;

    rep.residual = einstein_residual(params, coeffs, family_grid(family, opt.grid_points, opt.clip));
    rep.residual_tol = opt.residual_rel_tol * (1.0 + std::abs(params.eps));
    rep.residual_pass = rep.residual.structural_failures.empty() && rep.residual.max_abs <= rep.residual_tol;

    rep.collapse.push_back(collapse_check(params, coeffs, End::Left, family.domain.s1, opt.collapse_tol));
    if (family.domain.s2)
        rep.collapse.push_back(collapse_check(params, coeffs, End::Right, *family.domain.s2, opt.collapse_tol));

    const double hi = family.domain.s2 ? *family.domain.s2 : 1e6 * family.domain.s1;
    rep.scan = domain_scan(params, coeffs, family.domain.s1, hi, opt.scan_points, family.domain.s2.has_value());

    if (coeffs.kind == FamilyKind::GenericPsi) {
        rep.psi_residual_rel = psi_consistency(params, coeffs);
        rep.psi_pass = rep.psi_residual_rel <= opt.identity_tol;
    }

    rep.all_pass = rep.residual_pass && rep.psi_pass && rep.scan.pass &&
                   std::all_of(rep.collapse.begin(), rep.collapse.end(), [](const CollapseReport& c) { return c.pass; });
    return rep;
}

}  // namespace einlab
