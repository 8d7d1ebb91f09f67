#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "common.hpp"
#include "error.hpp"
#include "radial.hpp"
#include "verifier.hpp"

using namespace einlab;
using namespace einlab::test;

namespace {

using M2 = std::array<double, 4>;  // row-major 2x2

M2 mul(const M2& x, const M2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}
M2 inv(const M2& x) {
    const double d = x[0] * x[3] - x[1] * x[2];
    return {x[3] / d, -x[1] / d, -x[2] / d, x[0] / d};
}
M2 bmat(const Family& f, double s) {
    const auto b = b_matrix(f.params, f.coeffs, s);
    return {b.b11, b.b12, b.b12, b.b22};
}

// The three Einstein equations in the coordinate s, assembled from values of
// B, alpha and beta only; every derivative is a Richardson finite difference.
double fd_residual(const Family& f, double s) {
    const int n = f.params.n;
    const double p = f.params.p, eps = f.params.eps;
    const double q[2] = {double(f.params.q1), double(f.params.q2)};
    const double h = 1e-3 * s;
    auto alpha = [&](double x) { return eval_profile(f.params, f.coeffs, x, 0).alpha.v; };
    auto beta = [&](double x) { return eval_profile(f.params, f.coeffs, x, 0).beta.v; };
    M2 B = bmat(f, s), dB{}, ddB{};
    for (int i = 0; i < 4; ++i) {
        auto e = [&](double x) { return bmat(f, x)[i]; };
        dB[i] = fd1(e, s, h);
        ddB[i] = fd2(e, s, h);
    }
    const double a = alpha(s), da = fd1(alpha, s, h), dda = fd2(alpha, s, h);
    const double b = beta(s), db = fd1(beta, s, h), ddb = fd2(beta, s, h);
    const M2 Bi = inv(B);
    const M2 phi = mul(dB, Bi);
    const M2 t1 = mul(ddB, Bi), t2 = mul(phi, phi);
    const M2 dphi = {t1[0] - t2[0], t1[1] - t2[1], t1[2] - t2[2], t1[3] - t2[3]};
    const double ups = dB[0] * dB[3] - dB[1] * dB[2];
    const double U[2] = {q[0] * B[0] + q[1] * B[1], q[0] * B[1] + q[1] * B[3]};
    const double Delta = q[0] * U[0] + q[1] * U[1];

    const double hh = n * a * (-ddb / b + 0.5 * (db / b) * (db / b)) - n * da / 2 * db / b - dda / 2 + ups / 2 - eps;
    const double ba = a / 2 * (-ddb / b - (n - 1) * (db / b) * (db / b)) - da / 2 * db / b + p / b -
                      Delta / (2 * b * b) - eps;
    double se = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const int k = 2 * i + j;
            const double v = a / 2 * (-n * db / b * phi[k] - dphi[k]) - da / 2 * phi[k] +
                             n / (2 * b * b) * U[i] * q[j] - (i == j ? eps : 0.0);
            se = std::max(se, std::abs(v));
        }
    return std::max({std::abs(hh), std::abs(ba), se});
}

std::vector<Family> sample_families() {
    return {negative_family(1, 2, 1, 1, 0.5), negative_family(2, 3, 2, -1, 0.3), negative_family(1, 2, 3, 2, 1.0),
            ricci_flat_family(1, 2, 1, 1, 0.5), ricci_flat_family(3, 4, 1, 3, 0.8), positive_family(1, 2, 2, 1),
            positive_family(2, 3, -3, 2)};
}

}  // namespace

TEST_CASE("analytic residual vanishes where the finite-difference oracle does") {
    std::mt19937 rng(11);
    for (const auto& f : sample_families()) {
        const auto rep = einstein_residual(f.params, f.coeffs, family_grid(f));
        CHECK(rep.structural_failures.empty());
        CHECK(rep.max_abs <= 1e-8 * (1 + std::abs(f.params.eps)));
        for (double s : random_interior(f, rng, 10, 5e-2)) {
            if (!f.compact()) s = std::min(s, 50 * f.domain.s1);
            CHECK(fd_residual(f, s) < 1e-5 * (1 + std::abs(f.params.eps)));
        }
    }
}

TEST_CASE("a 1% error in kappa is caught by both residuals") {
    for (auto f : {negative_family(1, 2, 1, 1, 0.5), positive_family(1, 2, 2, 1)}) {
        f.coeffs.kappa *= 1.01;
        const double s = f.compact() ? 0.5 * (f.domain.s1 + *f.domain.s2) : 3 * f.domain.s1;
        const auto rep = einstein_residual(f.params, f.coeffs, {s});
        CHECK(rep.max_abs > 1e-3);
        CHECK(fd_residual(f, s) > 1e-3);
    }
}

TEST_CASE("property: fiber Ricci eigenvalues match the Ricci endomorphism") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.2, 3.0);
    std::uniform_int_distribution<int> qd(-6, 6);
    for (int trial = 0; trial < 100; ++trial) {
        const double l1 = pos(rng), l2 = pos(rng), th = u(rng);
        const double cs = std::cos(th), sn = std::sin(th);
        FiberMatrix b{l1 * cs * cs + l2 * sn * sn, (l1 - l2) * cs * sn, l1 * sn * sn + l2 * cs * cs, true};
        ModelParams params;
        params.n = 1 + trial % 3;
        params.p = 1 + trial % 5;
        params.q1 = qd(rng);
        params.q2 = qd(rng);
        if (params.q1 == 0 && params.q2 == 0) params.q2 = 1;
        const double c = pos(rng);
        const auto r = fiber_ricci(b, c, params);
        // Vertical block: B^(-1) (n/(2c^4)) U U^T; eigenvalues from trace and determinant.
        const double q1 = double(params.q1), q2 = double(params.q2);
        const double U[2] = {q1 * b.b11 + q2 * b.b12, q1 * b.b12 + q2 * b.b22};
        const double k = params.n / (2 * std::pow(c, 4));
        const M2 R = {k * U[0] * U[0], k * U[0] * U[1], k * U[1] * U[0], k * U[1] * U[1]};
        const M2 E = mul(inv({b.b11, b.b12, b.b12, b.b22}), R);
        const double tr = E[0] + E[3], det = E[0] * E[3] - E[1] * E[2];
        const double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
        const double lam_hi = (tr + disc) / 2, lam_lo = (tr - disc) / 2;
        const double Delta = q1 * U[0] + q2 * U[1];
        const double horiz = (params.p - Delta / (2 * c * c)) / (c * c);
        CHECK(r.eigenvalues[0] == doctest::Approx(lam_hi).epsilon(1e-10));
        CHECK(std::abs(r.eigenvalues[1] - lam_lo) <= 1e-10 * (1 + std::abs(lam_hi)));
        CHECK(r.eigenvalues[2] == doctest::Approx(horiz).epsilon(1e-10));
        const double trace = r.eigenvalues[0] + r.eigenvalues[1] + 2 * params.n * r.eigenvalues[2];
        CHECK(r.scalar == doctest::Approx(trace).epsilon(1e-10));
    }
    CHECK_THROWS_AS(fiber_ricci(FiberMatrix{1, 2, 1, false}, 1.0, ModelParams{}), Error);
    CHECK_THROWS_AS(fiber_ricci(FiberMatrix{1, 0, 1, true}, 0.0, ModelParams{}), Error);
}

TEST_CASE("collapse checks pass and agree with the arc-length slope") {
    for (const auto& f : sample_families()) {
        const auto left = collapse_check(f.params, f.coeffs, End::Left, f.domain.s1);
        CHECK(left.pass);
        CHECK(left.slope == doctest::Approx(1.0).epsilon(1e-12));
        // Oracle: sqrt(b11) / t just past s1.
        const double s = f.domain.s1 * (1 + 1e-6);
        const double ratio = std::sqrt(b_matrix(f.params, f.coeffs, s).b11) / t_of_s(f, s);
        CHECK(std::abs(ratio - 1.0) < 1e-4);
        if (f.compact()) {
            const double s2 = *f.domain.s2;
            const auto right = collapse_check(f.params, f.coeffs, End::Right, s2);
            CHECK(right.pass);
            CHECK(right.slope == doctest::Approx(-1.0).epsilon(1e-12));
            const auto fn = profile_functions(f.params, f.coeffs);
            const double d = 1e-6 * s2;
            boost::math::quadrature::tanh_sinh<double> ts;
            const double dt = ts.integrate(
                [&](double x, double xc) {
                    const double dist = xc > 0 ? xc : s2 - x;
                    return 1.0 / std::sqrt(fn.alpha.increment(s2, -dist));
                },
                s2 - d, s2, 1e-12);
            const double r2 = std::sqrt(b_matrix(f.params, f.coeffs, s2 - d).b22) / dt;
            CHECK(std::abs(r2 - 1.0) < 1e-4);
        }
    }
}

TEST_CASE("collapse check fails away from the root") {
    const Family f = negative_family();
    CHECK_FALSE(collapse_check(f.params, f.coeffs, End::Left, 1.1 * f.domain.s1).pass);
    Family g = f;
    g.coeffs.kappa *= 1.001;
    CHECK_FALSE(collapse_check(g.params, g.coeffs, End::Left, g.domain.s1).pass);
}

TEST_CASE("domain scan flags alpha <= 0 outside the domain") {
    const Family f = negative_family();
    const auto good = domain_scan(f.params, f.coeffs, f.domain.s1, 1e6 * f.domain.s1, 200, false);
    CHECK(good.pass);
    CHECK(good.min_alpha > 0);
    const auto bad = domain_scan(f.params, f.coeffs, 0.3 * f.domain.s1, 10 * f.domain.s1, 200, false);
    CHECK_FALSE(bad.pass);
    CHECK(bad.alpha_failures > 0);
    const Family pos = positive_family(2, 3, 3, 2);
    CHECK(domain_scan(pos.params, pos.coeffs, pos.domain.s1, *pos.domain.s2, 200, true).pass);
}

TEST_CASE("verify_family passes for built families and rejects a corrupted one") {
    for (const auto& f : sample_families()) {
        const auto rep = verify_family(f);
        CHECK(rep.all_pass);
        CHECK(rep.collapse.size() == (f.compact() ? 2u : 1u));
    }
    Family f = negative_family(1, 2, 1, 2, 0.5);
    f.coeffs.c2 *= 1.1;
    CHECK_FALSE(verify_family(f).all_pass);
}

TEST_CASE("interior grid shapes") {
    const auto lg = interior_grid(1.0, 1e3, 50);
    CHECK(lg.front() > 1.0);
    CHECK(lg.back() == 1e3);
    CHECK(lg[1] / lg[0] == doctest::Approx(lg[2] / lg[1]));
    const auto un = interior_grid(1.0, 2.0, 11, 1e-3);
    CHECK(un[1] - un[0] == doctest::Approx(un[2] - un[1]));
    CHECK(un.back() < 2.0);
    CHECK_THROWS_AS(interior_grid(2.0, 1.0, 10), Error);
}
