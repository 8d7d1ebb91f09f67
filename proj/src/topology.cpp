#include "topology.hpp"

#include <tuple>

#include "error.hpp"

namespace einlab {
namespace {

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Returns (g, x, y) with a x + b y = g >= 0.
std::tuple<BigInt, BigInt, BigInt> ext_gcd(BigInt a, BigInt b) {
    BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const BigInt qt = a / b;
        std::tie(a, b) = std::make_tuple(b, BigInt(a - qt * b));
        std::tie(x0, x1) = std::make_tuple(x1, BigInt(x0 - qt * x1));
        std::tie(y0, y1) = std::make_tuple(y1, BigInt(y0 - qt * y1));
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool congruent(const BigInt& a, const BigInt& b, const BigInt& modulus) { return (a - b) % modulus == 0; }

Rational frac(const BigInt& num, const BigInt& den) { return Rational(num) / Rational(den); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

int mu(const BigInt& l) { return l % 2 == 0 ? 1 : 0; }

// L + 3^mu [ (L+1)/2 ]^2
BigInt diffeo_form(const BigInt& l) {
    const BigInt half = floor_div(l + 1, 2);
    return l + (mu(l) == 1 ? 3 : 1) * half * half;
}

}  // namespace

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

NormalForm normal_form(const BundleCharge& q) {
    if (q.q1 == 0 && q.q2 == 0) throw Error(ErrorCode::Precondition, "bundle charge (0, 0) is excluded");
    const auto [g, r1, r2] = ext_gcd(q.q1, q.q2);
    NormalForm nf;
    nf.q0 = g;
    nf.a = {{{q.q1 / g, -r2}, {q.q2 / g, r1}}};
    return nf;
}

CharClasses char_classes(const BundleCharge& q) {
    const BigInt m = q.q1 * q.q2;
    if (m == 0) throw Error(ErrorCode::OutOfModel, "q1 q2 = 0: H^4 is not finite");
    CharClasses cc;
    cc.c1 = q.q1 + q.q2;
    cc.euler = m;
    cc.w2 = static_cast<int>(abs_big(1 + cc.c1) % 2);
    cc.spin = cc.w2 == 0;
    cc.p1 = 3 + q.q1 * q.q1 + q.q2 * q.q2;
    cc.order_h4 = abs_big(m);
    return cc;
}

RelNumbers rel_numbers(const BundleCharge& q) {
    const BigInt m = q.q1 * q.q2;
    if (m == 0) throw Error(ErrorCode::OutOfModel, "q1 q2 = 0: relative numbers undefined");
    const BigInt p = 3 + q.q1 * q.q1 + q.q2 * q.q2;
    RelNumbers r;
    r.y4 = frac(1, m);
    r.y2p1 = frac(p, m);
    r.p1sq = frac(p * p, m);
    r.sign = m > 0 ? 1 : -1;
    return r;
}

Rational mod1(const Rational& r) {
    const BigInt fl = floor_div(numerator(r), denominator(r));
    return r - Rational(fl);
}

KSInvariants kreck_stolz(const BundleCharge& q) {
    const BigInt m = q.q1 * q.q2;
    if (m == 0) throw Error(ErrorCode::OutOfModel, "q1 q2 = 0: Kreck-Stolz invariants undefined");
    const BigInt n = q.q1 * q.q1 + q.q2 * q.q2;
    const int sgn = m > 0 ? 1 : -1;
    KSInvariants ks;
    ks.spin = abs_big(q.q1 + q.q2) % 2 == 1;
    ks.order_h4 = abs_big(m);
    const Rational sig = frac(sgn, 224);
    if (ks.spin) {
        ks.s1 = frac((3 + n) * (3 + n), 896 * m) - sig;
        ks.s2 = frac(-(1 + n), 48 * m);
        ks.s3 = frac(5 - n, 12 * m);
    } else {
        ks.s1 = frac(1, 384 * m) - frac(3 + n, 192 * m) + frac((3 + n) * (3 + n), 896 * m) - sig;
        ks.s2 = frac(2 - n, 24 * m);
        ks.s3 = frac(10 - n, 8 * m);
    }
    ks.s1 = mod1(ks.s1);
    ks.s2 = mod1(ks.s2);
    ks.s3 = mod1(ks.s3);
    return ks;
}

Verdict classify(const BundleCharge& q, const BundleCharge& qhat, ClassifyMode mode) {
    Verdict v;
    const BigInt k = q.q1 * q.q2;
    const BigInt kh = qhat.q1 * qhat.q2;
    if (k == 0 || kh == 0) {
        v.reason = "q1 q2 = 0 is outside the classified range";
        return v;
    }
    v.comparable = true;
    const bool spin = abs_big(q.q1 + q.q2) % 2 == 1;
    const bool spin_h = abs_big(qhat.q1 + qhat.q2) % 2 == 1;
    v.witness.emplace_back("K", to_string(k));
    v.witness.emplace_back("K_hat", to_string(kh));
    if (abs_big(k) != abs_big(kh)) {
        v.reason = "orders of H^4 differ";
        return v;
    }
    if (spin != spin_h) {
        v.reason = "spin types differ";
        return v;
    }

    if (mode == ClassifyMode::Invariants) {
        const KSInvariants a = kreck_stolz(q);
        const KSInvariants b = kreck_stolz(qhat);
        const Rational d1 = a.s1 - b.s1;
        const Rational d2 = a.s2 - b.s2;
        const Rational d3 = a.s3 - b.s3;
        v.witness.emplace_back("ds1", to_string(d1));
        v.witness.emplace_back("28ds1", to_string(Rational(28) * d1));
        v.witness.emplace_back("ds2", to_string(d2));
        v.witness.emplace_back("ds3", to_string(d3));
        v.homeomorphic = is_integer(Rational(28) * d1) && is_integer(d2) && is_integer(d3);
        v.diffeomorphic = v.homeomorphic && is_integer(d1);
        v.reason = v.diffeomorphic ? "all invariants agree mod 1"
                   : v.homeomorphic ? "28 s1, s2, s3 agree but s1 differs mod 1"
                                    : "28 s1, s2 or s3 differ mod 1";
        return v;
    }

    const BigInt kabs = abs_big(k);
    if (k == -kh) {
        // K = -K_hat; K = K_hat = 0 was excluded above, so this branch has opposite signs.
        v.homeomorphic = v.diffeomorphic = kabs == 1;
        v.reason = v.homeomorphic ? "K = -K_hat with |K| = 1" : "K = -K_hat with |K| > 1";
        return v;
    }
    const BigInt l = q.q1 * q.q1 + q.q2 * q.q2;
    const BigInt lh = qhat.q1 * qhat.q1 + qhat.q2 * qhat.q2;
    const int m = mu(l);
    const BigInt homeo_mod = BigInt(m == 1 ? 8 : 16) * 3 * kabs;
    const BigInt diffeo_mod = BigInt(32) * (m == 1 ? 3 : 1) * 7 * kabs;
    const BigInt f = diffeo_form(l);
    const BigInt fh = diffeo_form(lh);
    v.witness.emplace_back("L", to_string(l));
    v.witness.emplace_back("L_hat", to_string(lh));
    v.witness.emplace_back("homeo_modulus", to_string(homeo_mod));
    v.witness.emplace_back("diffeo_modulus", to_string(diffeo_mod));
    v.witness.emplace_back("diffeo_form", to_string(f));
    v.witness.emplace_back("diffeo_form_hat", to_string(fh));
    v.homeomorphic = congruent(l, lh, homeo_mod);
    v.diffeomorphic = v.homeomorphic && congruent(f, fh, diffeo_mod);
    v.reason = v.diffeomorphic ? "both congruences hold"
               : v.homeomorphic ? "L congruence holds, smooth congruence fails"
                                : "L congruence fails";
    return v;
}

std::vector<ExamplePair> example_pairs(PairKind kind, long long s_min, long long s_max) {
    std::vector<ExamplePair> out;
    for (long long s = s_min; s <= s_max; ++s) {
        ExamplePair e;
        e.s = s;
        if (kind == PairKind::Spin) {
            const BigInt r = BigInt(48) * s + 1;
            e.q = {1, r * (r + 1)};
            e.qhat = {r, r + 1};
            const long long m7 = ((s % 7) + 7) % 7;
            e.expected_diffeomorphic = m7 == 0 || m7 == 3 || m7 == 4 || m7 == 6;
        } else {
            const BigInt r = BigInt(24) * s + 1;
            e.q = {2, 2 * r * (r + 1)};
            e.qhat = {2 * r, 2 * (r + 1)};
            const long long t = s / 4;
            const long long m7 = ((t % 7) + 7) % 7;
            e.expected_diffeomorphic = s % 4 == 0 && (m7 == 0 || m7 == 1 || m7 == 4 || m7 == 5 || m7 == 6);
        }
        e.expected_homeomorphic = true;
        e.by_invariants = classify(e.q, e.qhat, ClassifyMode::Invariants);
        e.by_congruences = classify(e.q, e.qhat, ClassifyMode::Congruences);
        e.matches = e.by_invariants.homeomorphic == e.expected_homeomorphic &&
                    e.by_congruences.homeomorphic == e.expected_homeomorphic &&
                    e.by_invariants.diffeomorphic == e.expected_diffeomorphic &&
                    e.by_congruences.diffeomorphic == e.expected_diffeomorphic;
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace einlab
