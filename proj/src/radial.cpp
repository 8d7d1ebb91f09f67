#include "radial.hpp"

#include <cmath>

#include "error.hpp"

namespace einlab {
namespace {

// Integral of alpha^(-1/2) over [lo, hi] with alpha anchored at a root; when the
// root is the singular end the exact offset from the quadrature is used.
double piece(const ProfileFunctions& f, double root, double lo, double hi, Singular sing,
             const QuadratureOptions& opt) {
    if (hi <= lo) return 0.0;
    const bool from_lo = sing == Singular::Left && lo == root;
    const bool from_hi = sing == Singular::Right && hi == root;
    const auto integrand = [&](double tau, double dist) {
        const double h = from_lo ? dist : from_hi ? -dist : tau - root;
        const double a = f.alpha.increment(root, h);
        if (!(a > 0.0)) throw Error(ErrorCode::Domain, "alpha <= 0 inside the integration range");
        return 1.0 / std::sqrt(a);
    };
    return integrate(integrand, lo, hi, sing, opt);
}

}  // namespace

double t_of_s(const ModelParams& params, const SolutionCoefficients& coeffs, double s1, double s,
              const QuadratureOptions& opt) {
    if (s < s1) throw Error(ErrorCode::Domain, "t(s) requires s >= s1");
    const ProfileFunctions f = profile_functions(params, coeffs);
    return piece(f, s1, s1, s, Singular::Left, opt);
}

double t_of_s(const Family& family, double s, const QuadratureOptions& opt) {
    const double s1 = family.domain.s1;
    if (s < s1) throw Error(ErrorCode::Domain, "t(s) requires s >= s1");
    if (!family.domain.s2) return t_of_s(family.params, family.coeffs, s1, s, opt);

    const double s2 = *family.domain.s2;
    if (s > s2) throw Error(ErrorCode::Domain, "t(s) requires s <= s2");
    const ProfileFunctions f = profile_functions(family.params, family.coeffs);
    const double mid = 0.5 * (s1 + s2);
    if (s <= mid) return piece(f, s1, s1, s, Singular::Left, opt);
    return piece(f, s1, s1, mid, Singular::Left, opt) + piece(f, s2, mid, s, Singular::Right, opt);
}

std::vector<double> t_on_grid(const Family& family, const std::vector<double>& grid, const QuadratureOptions& opt) {
    std::vector<double> out;
    out.reserve(grid.size());
    const ProfileFunctions f = profile_functions(family.params, family.coeffs);
    const double s1 = family.domain.s1;
    const bool compact = family.domain.s2.has_value();
    const double s2 = compact ? *family.domain.s2 : 0.0;
    const double mid = compact ? 0.5 * (s1 + s2) : 0.0;

    double prev = s1;
    double acc = 0.0;
    for (double s : grid) {
        if (s < prev) throw Error(ErrorCode::Domain, "grid must be increasing and start at or after s1");
        if (compact && s > s2) throw Error(ErrorCode::Domain, "grid point beyond s2");
        if (!compact || s <= mid) {
            acc += piece(f, s1, prev, s, prev == s1 ? Singular::Left : Singular::None, opt);
        } else {
            if (prev < mid) {
                acc += piece(f, s1, prev, mid, prev == s1 ? Singular::Left : Singular::None, opt);
                prev = mid;
            }
            acc += piece(f, s2, prev, s, s == s2 ? Singular::Right : Singular::None, opt);
        }
        out.push_back(acc);
        prev = s;
    }
    return out;
}

}  // namespace einlab
