#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>
#include <vector>

namespace einlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BundleCharge {
    BigInt q1;
    BigInt q2;
};

struct NormalForm {
    BigInt q0;                               // gcd(q1, q2) > 0
    std::array<std::array<BigInt, 2>, 2> a;  // [[q1/q0, -r2], [q2/q0, r1]], det 1
};

// Throws Precondition for (0, 0).
NormalForm normal_form(const BundleCharge& q);

struct CharClasses {
    BigInt c1;        // q1 + q2
    BigInt euler;     // q1 q2
    int w2 = 0;       // (1 + q1 + q2) mod 2
    bool spin = false;
    BigInt p1;        // 3 + q1^2 + q2^2
    BigInt order_h4;  // |q1 q2|
};

// Throws OutOfModel when q1 q2 = 0 (H^4 infinite).
CharClasses char_classes(const BundleCharge& q);

struct RelNumbers {
    Rational y4;
    Rational y2p1;
    Rational p1sq;
    int sign = 0;
};

RelNumbers rel_numbers(const BundleCharge& q);

struct KSInvariants {
    Rational s1;
    Rational s2;
    Rational s3;
    bool spin = false;
    BigInt order_h4;
};

// Representative in [0, 1).
Rational mod1(const Rational& r);

KSInvariants kreck_stolz(const BundleCharge& q);

enum class ClassifyMode { Invariants, Congruences };

struct Verdict {
    bool comparable = false;
    bool homeomorphic = false;
    bool diffeomorphic = false;
    std::string reason;
    std::vector<std::pair<std::string, std::string>> witness;
};

// Never throws for well-formed input; a zero product gives comparable = false.
Verdict classify(const BundleCharge& q, const BundleCharge& qhat, ClassifyMode mode);

enum class PairKind { Spin, NonSpin };

struct ExamplePair {
    long long s = 0;
    BundleCharge q;
    BundleCharge qhat;
    Verdict by_invariants;
    Verdict by_congruences;
    bool expected_homeomorphic = true;
    bool expected_diffeomorphic = false;
    bool matches = false;
};

// Spin: r = 48s+1, (1, r(r+1)) vs (r, r+1). Non-spin: r = 24s+1, (2, 2r(r+1)) vs (2r, 2(r+1)).
std::vector<ExamplePair> example_pairs(PairKind kind, long long s_min, long long s_max);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& r);

}  // namespace einlab
