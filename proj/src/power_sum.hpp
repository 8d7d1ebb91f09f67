#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "jet.hpp"

namespace einlab {

// Finite sum of integer power laws  sum_k coef_k * s^exp_k.
// Every metric profile of the solid-torus and 3-sphere families is of this
// form, so values and derivatives are exact term by term.
class PowerSum {
public:
    struct Term {
        double coef;
        int exponent;
    };

    PowerSum() = default;
    PowerSum(std::initializer_list<Term> terms) {
        for (const auto& t : terms) add(t.coef, t.exponent);
    }

    // Merges equal exponents.
    void add(double coef, int exponent) {
        for (auto& t : terms_) {
            if (t.exponent == exponent) {
                t.coef += coef;
                return;
            }
        }
        terms_.push_back({coef, exponent});
    }

    [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

    [[nodiscard]] double coefficient(int exponent) const {
        for (const auto& t : terms_)
            if (t.exponent == exponent) return t.coef;
        return 0.0;
    }

    [[nodiscard]] double operator()(double s) const {
        double acc = 0.0;
        for (const auto& t : terms_) acc += t.coef * std::pow(s, t.exponent);
        return acc;
    }

    // Sum of |term| at s; the natural scale for rounding error of operator().
    [[nodiscard]] double magnitude(double s) const {
        double acc = 0.0;
        for (const auto& t : terms_) acc += std::abs(t.coef * std::pow(s, t.exponent));
        return acc;
    }

    [[nodiscard]] PowerSum derivative() const {
        PowerSum out;
        for (const auto& t : terms_)
            if (t.exponent != 0) out.add(t.coef * t.exponent, t.exponent - 1);
        return out;
    }

    // (s d/ds - 1) applied termwise; kills the linear term exactly.
    [[nodiscard]] PowerSum euler_minus_identity() const {
        PowerSum out;
        for (const auto& t : terms_)
            if (t.exponent != 1) out.add(t.coef * (t.exponent - 1), t.exponent);
        return out;
    }

    [[nodiscard]] PowerSum without(int exponent) const {
        PowerSum out;
        for (const auto& t : terms_)
            if (t.exponent != exponent) out.add(t.coef, t.exponent);
        return out;
    }

    [[nodiscard]] PowerSum scaled(double k) const {
        PowerSum out;
        for (const auto& t : terms_) out.add(k * t.coef, t.exponent);
        return out;
    }

    // Value and derivatives up to `order` (0, 1 or 2); higher ones are left zero.
    template <class T = double>
    [[nodiscard]] BasicJet<T> jet(T s, int order = 2) const {
        using std::pow;
        BasicJet<T> j;
        for (const auto& t : terms_) {
            const T k = static_cast<T>(t.exponent);
            const T c = static_cast<T>(t.coef);
            const T sk = pow(s, t.exponent);
            j.v += c * sk;
            if (order >= 1 && t.exponent != 0) j.d1 += c * k * sk / s;
            if (order >= 2 && t.exponent != 0 && t.exponent != 1) j.d2 += c * k * (k - T(1)) * sk / (s * s);
        }
        return j;
    }

    // f(base + h) - f(base) without cancellation for small |h|.
    [[nodiscard]] double increment(double base, double h) const {
        const double rel = std::log1p(h / base);
        double acc = 0.0;
        for (const auto& t : terms_) {
            if (t.exponent == 0) continue;
            acc += t.coef * std::pow(base, t.exponent) * std::expm1(t.exponent * rel);
        }
        return acc;
    }

    friend PowerSum operator+(PowerSum a, const PowerSum& b) {
        for (const auto& t : b.terms_) a.add(t.coef, t.exponent);
        return a;
    }

private:
    std::vector<Term> terms_;
};

}  // namespace einlab
