#pragma once
#include <cmath>
#include <random>
#include <vector>

#include "builders.hpp"
#include "family.hpp"

namespace einlab::test {

inline Family negative_family(int n = 1, int p = 2, std::int64_t q1 = 1, std::int64_t q2 = 1, double lambda = 0.5,
                              double s1 = 1.0) {
    NegativeSpec spec;
    spec.s1 = s1;
    spec.lambda = lambda;
    spec.eps = -(2.0 * n + 2.0);
    spec.q1 = q1;
    spec.q2 = q2;
    return build_nonpositive(spec, BaseManifold{n, p});
}

inline Family ricci_flat_family(int n = 1, int p = 2, std::int64_t q1 = 1, std::int64_t q2 = 1,
                                double lambda = 0.5, double s1 = 1.0) {
    NegativeSpec spec;
    spec.s1 = s1;
    spec.lambda = lambda;
    spec.eps = 0.0;
    spec.q1 = q1;
    spec.q2 = q2;
    return build_nonpositive(spec, BaseManifold{n, p});
}

inline Family positive_family(int n = 1, int p = 2, std::int64_t q1 = 2, std::int64_t q2 = 1) {
    return build_positive(PositiveSpec{n, p, q1, q2});
}

// Upper end used when sampling a family: s2 or a few decades past s1.
inline double sample_hi(const Family& f, double decades = 3.0) {
    return f.domain.s2 ? *f.domain.s2 : f.domain.s1 * std::pow(10.0, decades);
}

// Random interior points, log-uniform for complete families.
inline std::vector<double> random_interior(const Family& f, std::mt19937& rng, std::size_t count,
                                           double margin = 1e-3) {
    const double lo = f.domain.s1;
    const double hi = sample_hi(f);
    std::vector<double> out;
    if (f.compact()) {
        const double w = hi - lo;
        std::uniform_real_distribution<double> u(lo + margin * w, hi - margin * w);
        for (std::size_t i = 0; i < count; ++i) out.push_back(u(rng));
    } else {
        std::uniform_real_distribution<double> u(std::log(lo * (1 + margin)), std::log(hi));
        for (std::size_t i = 0; i < count; ++i) out.push_back(std::exp(u(rng)));
    }
    return out;
}

// Step for finite differences at s: a small fraction of the distance to the
// nearest singularity of b, which is s = 0 or the root of Delta when c2 < 0.
inline double fd_step(const Family& f, double s) {
    double scale = s;
    if (f.coeffs.c2 < 0) {
        const int n = f.params.n;
        const double root = std::pow(-f.coeffs.kappa * f.coeffs.c2 * (n + 1) / (2.0 * f.params.p), 1.0 / (n + 1));
        scale = std::min(scale, s - root);
    }
    return 2e-3 * scale;
}

// Richardson-extrapolated central differences of a scalar function.
template <class F>
double fd1(const F& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2 * h);
    const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4 * d2 - d1) / 3;
}

template <class F>
double fd2(const F& f, double x, double h) {
    const double a = (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    const double b = (f(x + h / 2) - 2 * f(x) + f(x - h / 2)) / (h * h / 4);
    return (4 * b - a) / 3;
}

inline double rel_err(double a, double b, double floor = 1e-300) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace einlab::test
