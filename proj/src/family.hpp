#pragma once

#include <optional>
#include <string>

#include "profiles.hpp"

namespace einlab {

enum class FamilyClass { Negative, RicciFlat, Positive };

const char* to_string(FamilyClass c) noexcept;

struct Domain {
    double s1 = 0.0;
    std::optional<double> s2;  // absent for complete (non-compact) families
};

struct FamilyMetadata {
    std::string builder;
    FamilyClass family_class = FamilyClass::Negative;
    std::optional<double> lambda;
    int psi_sign = 1;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<double> line_offset;  // a in y = x + a
};

struct Family {
    ModelParams params;
    SolutionCoefficients coeffs;
    Domain domain;
    FamilyMetadata metadata;

    [[nodiscard]] bool compact() const { return domain.s2.has_value(); }
};

}  // namespace einlab
