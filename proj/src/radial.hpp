#pragma once

#include <vector>

#include "family.hpp"
#include "quadrature.hpp"

namespace einlab {

// Arc length t(s) = integral of alpha^(-1/2) from the collapse root s1.
// Throws Domain if alpha <= 0 is met inside (s1, s].
double t_of_s(const ModelParams& params, const SolutionCoefficients& coeffs, double s1, double s,
              const QuadratureOptions& opt = {});

// Same, but for compact families the stretch past the midpoint is anchored at
// the right root so that t stays accurate up to s2.
double t_of_s(const Family& family, double s, const QuadratureOptions& opt = {});

// t at every point of an increasing grid inside the family domain, accumulated
// interval by interval.
std::vector<double> t_on_grid(const Family& family, const std::vector<double>& grid,
                              const QuadratureOptions& opt = {});

}  // namespace einlab
