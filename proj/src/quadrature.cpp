#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "error.hpp"

namespace einlab {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

// Integral of g(h), h in [0, len], where g may be singular like h^(-1/2) at 0
// when `singular` is set. Pieces double in width from the origin.
template <class G>
double from_origin(const G& g, double len, double first, bool singular, const QuadratureOptions& opt) {
    first = std::min(first, len);
    double total = singular
        ? Rule::integrate([&](double u) { return 2.0 * u * g(u * u); }, 0.0, std::sqrt(first), opt.max_depth, opt.rel_tol)
        : Rule::integrate(g, 0.0, first, opt.max_depth, opt.rel_tol);
    double lo = first;
    double width = first;
    while (lo < len) {
        width *= 2.0;
        const double hi = (len - lo <= width * 1.5) ? len : lo + width;
        total += Rule::integrate(g, lo, hi, opt.max_depth, opt.rel_tol);
        lo = hi;
    }
    return total;
}

double left_anchored(const Integrand& f, double a, double b, bool singular, const QuadratureOptions& opt) {
    const double first = std::abs(a) > 0.0 ? std::abs(a) : b - a;
    return from_origin([&](double h) { return f(a + h, h); }, b - a, first, singular, opt);
}

double right_anchored(const Integrand& f, double a, double b, const QuadratureOptions& opt) {
    const double first = std::abs(b) > 0.0 ? std::abs(b) : b - a;
    return from_origin([&](double h) { return f(b - h, h); }, b - a, first, true, opt);
}

}  // namespace

double integrate(const Integrand& f, double a, double b, Singular singular, const QuadratureOptions& opt) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw Error(ErrorCode::Domain, "integration interval must satisfy a < b");
    }
    switch (singular) {
        case Singular::None: return left_anchored(f, a, b, false, opt);
        case Singular::Left: return left_anchored(f, a, b, true, opt);
        case Singular::Right: return right_anchored(f, a, b, opt);
        case Singular::Both: {
            const double mid = 0.5 * (a + b);
            return left_anchored(f, a, mid, true, opt) + right_anchored(f, mid, b, opt);
        }
    }
    return 0.0;
}

}  // namespace einlab
