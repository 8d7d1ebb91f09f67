#include "builders.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "verifier.hpp"

namespace einlab {
namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

constexpr double kScanSteps = 2000;
// The generic coefficients of U cancel to O(1 - lambda) and are divided by
// psi ~ sqrt(1 - lambda), so their relative error grows like 1e-16 / (1 - lambda).
constexpr double kLambdaOneGap = 1e-6;

void check_base(int n, int p) {
    if (n < 1) throw Error(ErrorCode::Precondition, "n must be a positive integer");
    if (p < 1) throw Error(ErrorCode::Precondition, "p must be a positive integer");
}

// sum_{i=0}^{m} hi^(m-i) lo^i, i.e. (hi^(m+1) - lo^(m+1)) / (hi - lo) without the division.
double geometric_sum(double hi, double lo, int m) {
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) acc += std::pow(hi, m - i) * std::pow(lo, i);
    return acc;
}

template <class F>
std::pair<double, double> refine(F f, double lo, double hi) {
    std::uintmax_t iters = 200;
    return toms748_solve(f, lo, hi, eps_tolerance<double>(std::numeric_limits<double>::digits - 2), iters);
}

void require_pass(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::Solver, "post-build check failed: " + what);
}

}  // namespace

double kappa_ratio(const NegativeSpec& spec, const BaseManifold& base, double kappa) {
    const double np1 = base.n + 1.0;
    const double num = std::sqrt(2.0 * spec.lambda * base.p * kappa * kappa * kappa * spec.s1 / np1);
    const double den = base.p * (1.0 - spec.lambda / np1) - spec.eps * kappa * spec.s1;
    return num / den;
}

double solve_kappa(const NegativeSpec& spec, const BaseManifold& base) {
    check_base(base.n, base.p);
    if (spec.eps > 0.0) throw Error(ErrorCode::Precondition, "kappa quantization needs eps <= 0");
    if (spec.q2 == 0) throw Error(ErrorCode::Precondition, "q2 must be nonzero");
    if (!(spec.s1 > 0.0)) throw Error(ErrorCode::Precondition, "s1 must be positive");
    if (!(spec.lambda > 0.0 && spec.lambda <= 1.0)) throw Error(ErrorCode::Precondition, "lambda must lie in (0, 1]");

    const double target = std::abs(static_cast<double>(spec.q2));
    const auto f = [&](double k) { return kappa_ratio(spec, base, k) - target; };
    double lo = std::numeric_limits<double>::epsilon();
    double hi = 1.0;
    for (int i = 0; f(hi) < 0.0; ++i) {
        if (i > 2000) throw Error(ErrorCode::Solver, "kappa bracket expansion did not terminate");
        lo = hi;
        hi *= 2.0;
    }
    if (f(lo) > 0.0) throw Error(ErrorCode::Solver, "kappa bracket lower end already above target");
    const auto [a, b] = refine(f, lo, hi);
    return 0.5 * (a + b);
}

Family build_nonpositive(const NegativeSpec& spec, const BaseManifold& base) {
    if (spec.lambda < spec.lambda_floor)
        throw Error(ErrorCode::Precondition, "lambda below the configured floor; the metric degenerates as lambda -> 0");
    if (spec.lambda < 1.0 && spec.lambda > 1.0 - kLambdaOneGap)
        throw Error(ErrorCode::Precondition,
                    "lambda too close to 1 for the generic family (U loses precision); use lambda = 1");
    if (spec.psi_sign != 1 && spec.psi_sign != -1) throw Error(ErrorCode::Precondition, "psi sign must be +1 or -1");
    const double kappa = solve_kappa(spec, base);

    const int n = base.n;
    const double np1 = n + 1.0;
    const double p = base.p;
    const double eps = spec.eps;
    const double s1 = spec.s1;
    const double lam = spec.lambda;
    const double q1 = static_cast<double>(spec.q1);
    const double q2 = static_cast<double>(spec.q2);
    const double kn = std::pow(kappa, n);

    Family fam;
    fam.params = ModelParams{n, base.p, spec.q1, spec.q2, eps, base.vol_base};
    fam.domain.s1 = s1;
    fam.metadata.builder = "nonpositive";
    fam.metadata.family_class = eps < 0.0 ? FamilyClass::Negative : FamilyClass::RicciFlat;
    fam.metadata.lambda = lam;
    fam.metadata.psi_sign = spec.psi_sign;

    SolutionCoefficients& c = fam.coeffs;
    c.kappa = kappa;
    if (lam == 1.0) {
        c.kind = FamilyKind::PsiZero;
        c.c2 = 0.0;
        c.c1 = 2.0 * eps / np1 * std::pow(s1, n + 1) - 2.0 * p / (kappa * np1) * std::pow(s1, n);
        c.w1 = -q2 * kn * n * c.c1;
        c.w2 = q1 * kn * n * c.c1;
        c.psi = 0.0;
    } else {
        c.kind = FamilyKind::GenericPsi;
        c.c1 = 2.0 * eps / np1 * std::pow(s1, n + 1) - 2.0 * p * lam / (kappa * np1) * std::pow(s1, n);
        c.c2 = 2.0 * p * (lam - 1.0) / (kappa * np1) * std::pow(s1, n + 1);
        c.psi = spec.psi_sign * std::sqrt(8.0 / np1 * p * p * std::pow(kappa, 2 * n + 1) * lam * (1.0 - lam) *
                                          std::pow(s1, 2 * n + 1) * (p - eps * kappa * s1));
        c.w1 = q2 * std::pow(kappa, n - 1) *
               (kappa * c.c1 + 2.0 * p * std::pow(s1, n) - 2.0 * eps * kappa * std::pow(s1, n + 1));
        c.w2 = (c.psi - q1 * c.w1) / q2;
        require_pass(psi_consistency(fam.params, c) <= 1e-9, "psi consistency");
    }
    require_pass(collapse_check(fam.params, c, End::Left, s1).pass, "left collapse");
    require_pass(domain_scan(fam.params, c, s1, 1e6 * s1, 200, false).pass, "positivity on (s1, 1e6 s1]");
    return fam;
}

bool in_region(double x, double y, int n) {
    return 0.0 < x && x < y && y < 1.0 && std::pow(y, n + 1) - std::pow(y, n) > std::pow(x, n + 1) - std::pow(x, n);
}

std::vector<double> a_polys(double x, double y, int n) {
    std::vector<double> a(static_cast<std::size_t>(n) + 1);
    a[0] = 1.0;
    for (int m = 1; m <= n; ++m) a[m] = geometric_sum(y, x, m) - geometric_sum(y, x, m - 1);
    return a;
}

QSquared q_squared(double x, double y, int n, int p) {
    const std::vector<double> a = a_polys(x, y, n);
    if (!(a[n] > 0.0)) throw Error(ErrorCode::OutOfModel, "A_n <= 0: point outside the admissible region");
    double sx = 0.0;
    double sy = 0.0;
    for (int i = 0; i <= n; ++i) {
        sx += std::pow(x, i) * a[n - i];
        sy += std::pow(y, i) * a[n - i];
    }
    const double pre = std::pow(p / (n + 1.0), 2);
    return {pre * y * (1.0 - x) / (std::pow(x, n) * a[n]) * sx * sx,
            pre * x * (1.0 - y) / (std::pow(y, n) * a[n]) * sy * sy};
}

std::optional<double> theta_on_line(double target, double a, int n, int p) {
    const double top = 1.0 - a;
    const auto admissible = [&](double x) { return x > 0.0 && a_polys(x, x + a, n)[n] > 0.0; };
    const auto h = [&](double x) { return q_squared(x, x + a, n, p).q2sq - target; };

    double prev = top;  // h(top) = -target < 0
    for (int k = 1; k < static_cast<int>(kScanSteps); ++k) {
        double x = top * (1.0 - k / kScanSteps);
        if (!admissible(x)) {
            // q2^2 blows up at the region edge; close in on it until h turns positive.
            double good = prev;
            double bad = x;
            for (int i = 0; i < 200; ++i) {
                const double mid = 0.5 * (good + bad);
                if (!admissible(mid)) {
                    bad = mid;
                } else if (h(mid) > 0.0) {
                    const auto [lo, hi] = refine(h, mid, prev);
                    return 0.5 * (lo + hi);
                } else {
                    good = mid;
                    prev = mid;
                }
            }
            return std::nullopt;
        }
        if (h(x) >= 0.0) {
            const auto [lo, hi] = refine(h, x, prev);
            return 0.5 * (lo + hi);
        }
        prev = x;
    }
    return std::nullopt;
}

XYSolution solve_xy(std::int64_t l1, std::int64_t l2, int n, int p) {
    check_base(n, p);
    if (!(l1 > l2 && l2 >= 1)) throw Error(ErrorCode::Precondition, "solve_xy needs L1 > L2 >= 1");
    const double t1 = static_cast<double>(l1) * static_cast<double>(l1);
    const double t2 = static_cast<double>(l2) * static_cast<double>(l2);

    XYSolution sol;
    sol.path_min_a = std::numeric_limits<double>::infinity();
    const auto visit = [&](double x, double a) {
        const double y = x + a;
        sol.path.push_back({x, y, in_region(x, y, n)});
        for (double v : a_polys(x, y, n)) sol.path_min_a = std::min(sol.path_min_a, v);
    };
    // Outer residual along the continuation; NaN where the inner root is missing.
    const auto g = [&](double a) {
        const auto th = theta_on_line(t2, a, n, p);
        if (!th) return std::numeric_limits<double>::quiet_NaN();
        if (a > 0.0) visit(*th, a);
        return q_squared(*th, *th + a, n, p).q1sq - t1;
    };

    double a_lo = 0.0;
    double a_hi = 0.0;
    bool bracketed = false;
    for (int k = 1; k <= 50; ++k) {
        const double a = 1.0 - std::ldexp(1.0, -k);
        const double v = g(a);
        if (std::isnan(v)) break;
        if (v > 0.0) {
            a_hi = a;
            bracketed = true;
            break;
        }
        a_lo = a;
    }
    if (!bracketed) {
        std::ostringstream msg;
        msg << "continuation in the line offset found no sign change (L1=" << l1 << ", L2=" << l2 << ")";
        throw Error(ErrorCode::Solver, msg.str());
    }
    if (a_lo == 0.0) a_lo = std::numeric_limits<double>::min();  // a = 0 itself is the diagonal edge
    const auto [alo, ahi] = refine(
        [&](double a) {
            const double v = g(a);
            if (std::isnan(v)) throw Error(ErrorCode::Solver, "inner root lost during continuation");
            return v;
        },
        a_lo, a_hi);
    const double a = 0.5 * (alo + ahi);
    const double x = *theta_on_line(t2, a, n, p);
    sol.line_offset = a;
    sol.point = {x, x + a, in_region(x, x + a, n)};

    const auto residuals = [&](double xx, double yy) {
        const QSquared q = q_squared(xx, yy, n, p);
        return std::pair{std::abs(q.q1sq - t1) / t1, std::abs(q.q2sq - t2) / t2};
    };
    std::tie(sol.residual1, sol.residual2) = residuals(sol.point.x, sol.point.y);

    if (std::max(sol.residual1, sol.residual2) > 1e-12) {
        // Damped Newton on the logarithmic residuals as a polish/fallback.
        sol.newton_fallback = true;
        Eigen::Vector2d z(sol.point.x, sol.point.y);
        const auto F = [&](const Eigen::Vector2d& v) {
            const QSquared q = q_squared(v[0], v[1], n, p);
            return Eigen::Vector2d(std::log(q.q1sq / t1), std::log(q.q2sq / t2));
        };
        for (int it = 0; it < 50; ++it) {
            const Eigen::Vector2d f0 = F(z);
            if (f0.cwiseAbs().maxCoeff() < 1e-14) break;
            Eigen::Matrix2d J;
            for (int j = 0; j < 2; ++j) {
                Eigen::Vector2d dz = Eigen::Vector2d::Zero();
                dz[j] = 1e-7 * std::max(1e-3, z[j]);
                J.col(j) = (F(z + dz) - F(z - dz)) / (2.0 * dz[j]);
            }
            const Eigen::Vector2d step = J.fullPivLu().solve(-f0);
            double damp = 1.0;
            for (; damp > 1e-6; damp *= 0.5) {
                const Eigen::Vector2d trial = z + damp * step;
                if (in_region(trial[0], trial[1], n) && F(trial).norm() < f0.norm()) break;
            }
            if (damp <= 1e-6) break;
            z += damp * step;
        }
        sol.point = {z[0], z[1], in_region(z[0], z[1], n)};
        sol.line_offset = z[1] - z[0];
        std::tie(sol.residual1, sol.residual2) = residuals(z[0], z[1]);
    }
    return sol;
}

Family build_positive(const PositiveSpec& spec) {
    check_base(spec.n, spec.p);
    const std::int64_t a1 = spec.q1 < 0 ? -spec.q1 : spec.q1;
    const std::int64_t a2 = spec.q2 < 0 ? -spec.q2 : spec.q2;
    if (!(a1 > a2 && a2 > 0)) throw Error(ErrorCode::Precondition, "positive families need |q1| > |q2| > 0");

    const XYSolution xy = solve_xy(a1, a2, spec.n, spec.p);
    if (!xy.point.region_ok || std::max(xy.residual1, xy.residual2) > 1e-9)
        throw Error(ErrorCode::Solver, "(x, y) solver did not reach the admissible region to tolerance");

    const int n = spec.n;
    const double np1 = n + 1.0;
    const double p = spec.p;
    const double x = xy.point.x;
    const double y = xy.point.y;
    const double sn = geometric_sum(y, x, n);
    const double an = a_polys(x, y, n)[n];
    const double f1 = 1.0 - x - (1.0 - y) * sn / (np1 * std::pow(x, n));
    const double f2 = 1.0 - y - (1.0 - x) * sn / (np1 * std::pow(y, n));
    const double kappa2 = np1 * np1 * p * p * std::pow(x, n) * std::pow(y, n) / ((y - x) * (y - x) * sn * an) *
                          f1 * f1 * f2 * f2;
    const double kappa = std::sqrt(kappa2);
    const double s1 = p * x / (kappa * 2.0 * np1);
    const double s2 = p * y / (kappa * 2.0 * np1);
    const double lin = 2.0 * p / (kappa * np1);
    const double eps = 2.0 * n + 2.0;
    const double q1 = static_cast<double>(spec.q1);
    const double q2 = static_cast<double>(spec.q2);

    Family fam;
    fam.params = ModelParams{n, spec.p, spec.q1, spec.q2, eps, spec.vol_base};
    fam.domain = {s1, s2};
    fam.metadata.builder = "positive";
    fam.metadata.family_class = FamilyClass::Positive;
    fam.metadata.x = x;
    fam.metadata.y = y;
    fam.metadata.line_offset = xy.line_offset;

    SolutionCoefficients& c = fam.coeffs;
    c.kind = FamilyKind::GenericPsi;
    c.kappa = kappa;
    c.c1 = 4.0 * geometric_sum(s2, s1, n + 1) - lin * geometric_sum(s2, s1, n);
    c.c2 = -s1 * s2 * (4.0 * geometric_sum(s2, s1, n) - lin * geometric_sum(s2, s1, n - 1));
    const double kn1 = std::pow(kappa, n - 1);
    c.w1 = q2 * kn1 * (kappa * c.c1 + 2.0 * p * std::pow(s1, n) - (4.0 * n + 4.0) * kappa * std::pow(s1, n + 1));
    c.w2 = -q1 * kn1 * (kappa * c.c1 + 2.0 * p * std::pow(s2, n) - (4.0 * n + 4.0) * kappa * std::pow(s2, n + 1));
    c.psi = q1 * c.w1 + q2 * c.w2;

    require_pass(0.0 < s1 && s1 < s2 && s2 < p / (kappa * 2.0 * np1), "0 < s1 < s2 < p/(kappa(2n+2))");
    require_pass(c.c2 < 0.0 && c.c1 < 4.0 * std::pow(s1, n + 1), "c2 < 0 and c1 < 4 s1^(n+1)");
    const VerificationReport rep = verify_family(fam);
    require_pass(rep.psi_pass, "psi consistency");
    require_pass(rep.collapse.size() == 2 && rep.collapse[0].pass && rep.collapse[1].pass, "collapse at both ends");
    require_pass(rep.residual_pass, "Einstein residual");
    require_pass(rep.scan.pass, "positivity and auxiliary bound on (s1, s2)");
    return fam;
}

}  // namespace einlab
