#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "jet.hpp"
#include "power_sum.hpp"

namespace einlab {

struct ModelParams {
    int n = 1;          // complex dimension of the base
    int p = 2;          // Einstein constant of the base metric
    std::int64_t q1 = 0;
    std::int64_t q2 = 1;
    double eps = 0.0;   // Einstein constant of the total space
    double vol_base = 2.0 * std::numbers::pi;
};

enum class FamilyKind { GenericPsi, PsiZero };

struct SolutionCoefficients {
    FamilyKind kind = FamilyKind::GenericPsi;
    double kappa = 1.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double psi = 0.0;
};

// The five profile functions as power sums in s.
struct ProfileFunctions {
    PowerSum alpha;
    PowerSum beta;
    PowerSum delta;
    PowerSum u1;
    PowerSum u2;
};

// Throws InconsistentCoefficients for a generic family with psi == 0.
ProfileFunctions profile_functions(const ModelParams& params, const SolutionCoefficients& coeffs);

template <class T>
struct BasicProfileSample {
    T s{};
    BasicJet<T> alpha, beta, delta, u1, u2;
    BasicJet<T> b11, b12, b22;
    bool b_defined = false;  // false where delta <= 0
};

using ProfileSample = BasicProfileSample<double>;

template <class T>
BasicProfileSample<T> sample_profile(const ModelParams& params, const ProfileFunctions& f, T s, int order) {
    BasicProfileSample<T> out;
    out.s = s;
    out.alpha = f.alpha.jet<T>(s, order);
    out.beta = f.beta.jet<T>(s, order);
    out.delta = f.delta.jet<T>(s, order);
    out.u1 = f.u1.jet<T>(s, order);
    out.u2 = f.u2.jet<T>(s, order);
    if (out.delta.v > T(0)) {
        const T q1 = static_cast<T>(params.q1);
        const T q2 = static_cast<T>(params.q2);
        const BasicJet<T> inv = reciprocal(out.delta);
        out.b11 = (out.u1 * out.u1 + (q2 * q2) * out.alpha) * inv;
        out.b12 = (out.u1 * out.u2 - (q1 * q2) * out.alpha) * inv;
        out.b22 = (out.u2 * out.u2 + (q1 * q1) * out.alpha) * inv;
        out.b_defined = true;
    }
    return out;
}

// Throws Domain for s <= 0 and for order outside 0..2.
ProfileSample eval_profile(const ModelParams& params, const SolutionCoefficients& coeffs, double s, int order = 2);

struct FiberMatrix {
    double b11 = 0.0;
    double b12 = 0.0;
    double b22 = 0.0;
    bool positive_definite = false;

    [[nodiscard]] double det() const { return b11 * b22 - b12 * b12; }
};

// Throws DegenerateFiber where delta <= 0.
FiberMatrix b_matrix(const ModelParams& params, const SolutionCoefficients& coeffs, double s);

// Relative mismatch between psi^2 and the value forced by the other constants.
double psi_consistency(const ModelParams& params, const SolutionCoefficients& coeffs);

// alpha near a known root, evaluated as an increment so that it keeps full
// relative accuracy as s approaches the root.
double alpha_near_root(const ProfileFunctions& f, double root, double s);

}  // namespace einlab
