#pragma once

#include <cmath>

namespace einlab {

// Value with first and second derivative in one variable. Arithmetic
// propagates derivatives exactly (truncated Taylor algebra of order 2).
template <class T>
struct BasicJet {
    T v{};
    T d1{};
    T d2{};

    constexpr BasicJet() = default;
    constexpr BasicJet(T value, T first = T{}, T second = T{}) : v(value), d1(first), d2(second) {}

    template <class U>
    [[nodiscard]] constexpr BasicJet<U> as() const {
        return {static_cast<U>(v), static_cast<U>(d1), static_cast<U>(d2)};
    }
};

using Jet = BasicJet<double>;

template <class T>
constexpr BasicJet<T> operator+(const BasicJet<T>& a, const BasicJet<T>& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
}
template <class T>
constexpr BasicJet<T> operator-(const BasicJet<T>& a, const BasicJet<T>& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
}
template <class T>
constexpr BasicJet<T> operator-(const BasicJet<T>& a) {
    return {-a.v, -a.d1, -a.d2};
}
template <class T>
constexpr BasicJet<T> operator*(T k, const BasicJet<T>& a) {
    return {k * a.v, k * a.d1, k * a.d2};
}
template <class T>
constexpr BasicJet<T> operator*(const BasicJet<T>& a, T k) {
    return k * a;
}
template <class T>
constexpr BasicJet<T> operator*(const BasicJet<T>& a, const BasicJet<T>& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + T(2) * a.d1 * b.d1 + a.v * b.d2};
}
template <class T>
constexpr BasicJet<T> reciprocal(const BasicJet<T>& a) {
    const T r = T(1) / a.v;
    const T r2 = r * r;
    return {r, -a.d1 * r2, (T(2) * a.d1 * a.d1 * r - a.d2) * r2};
}
template <class T>
constexpr BasicJet<T> operator/(const BasicJet<T>& a, const BasicJet<T>& b) {
    return a * reciprocal(b);
}
template <class T>
BasicJet<T> sqrt(const BasicJet<T>& a) {
    using std::sqrt;
    const T r = sqrt(a.v);
    const T d1 = a.d1 / (T(2) * r);
    return {r, d1, (a.d2 - T(2) * d1 * d1) / (T(2) * r)};
}

}  // namespace einlab
