#pragma once

#include <functional>

namespace einlab {

// Which ends of the interval carry an integrable |tau - end|^(-1/2) singularity.
enum class Singular { None, Left, Right, Both };

struct QuadratureOptions {
    double rel_tol = 1e-12;
    unsigned max_depth = 15;
};

// The integrand receives tau and its exact distance to the nearer singular end
// (to a when nothing is singular). Near a singular end that distance is the
// substitution variable squared, so it never rounds to zero.
using Integrand = std::function<double(double tau, double dist)>;

// Integral over [a, b], a < b. Singular ends are removed by tau = end +/- u^2;
// long ranges are cut into geometrically growing pieces measured from the
// singular (or left) end so each piece sees a smooth integrand of bounded scale.
double integrate(const Integrand& f, double a, double b, Singular singular, const QuadratureOptions& opt = {});

}  // namespace einlab
