#include "profiles.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace einlab {

ProfileFunctions profile_functions(const ModelParams& params, const SolutionCoefficients& coeffs) {
    const int n = params.n;
    const double nd = n;
    const double p = params.p;
    const double eps = params.eps;
    const double q1 = static_cast<double>(params.q1);
    const double q2 = static_cast<double>(params.q2);
    const double k = coeffs.kappa;
    const double c1 = coeffs.c1;
    const double c2 = coeffs.c2;
    const double kn = std::pow(k, n);

    ProfileFunctions f;
    f.alpha = PowerSum{{-2.0 * eps / (nd + 1.0), 2},
                       {2.0 * p / (k * (nd + 1.0)), 1},
                       {c1, 1 - n},
                       {c2, -n}};
    f.beta = PowerSum{{k, 1}};
    f.delta = PowerSum{{2.0 * p * k / (nd + 1.0), 1}, {k * k * c2, -n}};

    if (coeffs.kind == FamilyKind::PsiZero) {
        f.u1 = PowerSum{};
        f.u2 = f.delta.scaled(1.0 / q2);
        return f;
    }
    if (coeffs.psi == 0.0)
        throw Error(ErrorCode::InconsistentCoefficients, "generic family requires psi != 0");

    const double psi = coeffs.psi;
    const double lin = 2.0 * k / (psi * (nd + 1.0));
    const double tail = k * k * c2 / psi;
    const double shared = eps * kn * k * c2 * (nd + 1.0);
    f.u1 = PowerSum{{lin * (p * coeffs.w1 + nd * p * q2 * kn * c1 + q2 * shared), 1},
                    {tail * (coeffs.w1 - q2 * kn * c1), -n}};
    f.u2 = PowerSum{{lin * (p * coeffs.w2 - nd * p * q1 * kn * c1 - q1 * shared), 1},
                    {tail * (coeffs.w2 + q1 * kn * c1), -n}};
    return f;
}

ProfileSample eval_profile(const ModelParams& params, const SolutionCoefficients& coeffs, double s, int order) {
    if (!(s > 0.0)) throw Error(ErrorCode::Domain, "profile evaluated at s <= 0");
    if (order < 0 || order > 2) throw Error(ErrorCode::Domain, "derivative order must be 0, 1 or 2");
    return sample_profile(params, profile_functions(params, coeffs), s, order);
}

FiberMatrix b_matrix(const ModelParams& params, const SolutionCoefficients& coeffs, double s) {
    const ProfileSample ps = eval_profile(params, coeffs, s, 0);
    if (!ps.b_defined) throw Error(ErrorCode::DegenerateFiber, "fiber metric undefined where Delta <= 0");
    FiberMatrix b{ps.b11.v, ps.b12.v, ps.b22.v, false};
    b.positive_definite = b.b11 > 0.0 && b.det() > 0.0;
    return b;
}

double psi_consistency(const ModelParams& params, const SolutionCoefficients& coeffs) {
    const double nd = params.n;
    const double k = coeffs.kappa;
    const double lhs = coeffs.psi * coeffs.psi;
    const double rhs = 2.0 * (nd + 1.0) * std::pow(k, 2 * params.n + 3) * coeffs.c2 *
                       (params.p * coeffs.c1 + coeffs.c2 * params.eps * k);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
}

double alpha_near_root(const ProfileFunctions& f, double root, double s) {
    return f.alpha.increment(root, s - root);
}

}  // namespace einlab
