#include <doctest.h>

#include "support.hpp"

using namespace wmtest;

TEST_CASE("chart_to_tilde") {
    const ModelParams p;
    const auto [ut, v1] = chart_to_tilde(p, 1.0, 4.0);
    CHECK(ut == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v1 == doctest::Approx(4.5).epsilon(1e-15));
    for (double z0 : {-2.0, -0.3, 0.0, 0.7, 5.0}) {
        const auto [u0, w0] = chart_to_tilde(p, z0, 0.0);
        CHECK(u0 == doctest::Approx(2 * z0 / (z0 * z0 + 1)));
        CHECK(w0 == doctest::Approx(1 / (z0 * z0 + 1)));
    }
    for (int i = 0; i < 1000; ++i) {
        const double z = uniform(-10, 10), tau = uniform(-10, 10);
        const auto [a, b] = chart_to_tilde(p, z, tau);
        CHECK(std::abs((z * z - 1) * b - z * a + p.c()) <= 1e-10 * (1 + std::abs(z * z * b)));
    }
}

TEST_CASE("state pairs at the example anchors") {
    const ModelParams p;
    const StatePair a = to_state_pair(p, {0.7, 1.3, 0.0});
    CHECK(a.left.u == a.right.u);
    CHECK(a.left.v == a.right.v);
    const State w2 = left_state(p, {-2, -2, 0});
    CHECK(w2.u == doctest::Approx(-0.85).epsilon(1e-14));
    CHECK(w2.v == doctest::Approx(3.2).epsilon(1e-14));
    const State w3 = left_state(p, {2.5, -1.5, 0});
    CHECK(std::abs(w3.u + 0.898) <= 1e-3);
    CHECK(std::abs(w3.v + 4.612) <= 1e-3);
}

TEST_CASE("shock speed") {
    const ModelParams p;
    CHECK(sigma(p, 1.0, 4.0) == doctest::Approx(4.625).epsilon(1e-15));
    CHECK(sigma(p, 0.5, 0.0) == doctest::Approx(10.0 / 8.0 * 0.5 / 1.25));
    // Defining quotient (f(W) - f(W')) / (u - u') and the RH residual.
    for (int i = 0; i < 10000; ++i) {
        const ManifoldPoint q{uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const StatePair sp = to_state_pair(p, q);
        CHECK(rh_residual(p, sp) <= 1e-8);
        const double du = sp.left.u - sp.right.u;
        if (std::abs(du) > 1e-3) {
            const double s = (flux(p, sp.left).first - flux(p, sp.right).first) / du;
            CHECK(std::abs(s - sp.sigma) <= 1e-8 * std::max(1.0, std::abs(s)));
        }
    }
}

TEST_CASE("reflection") {
    const ModelParams p;
    const ManifoldPoint q{1, 2, 0.5};
    CHECK(reflect(q).y == -0.5);
    const StatePair a = to_state_pair(p, q), b = to_state_pair(p, reflect(q));
    CHECK(a.left.u == b.right.u);
    CHECK(a.left.v == b.right.v);
    CHECK(a.right.u == b.left.u);
    for (int i = 0; i < 1000; ++i) {
        const ManifoldPoint r{uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const ManifoldPoint rr = reflect(reflect(r));
        CHECK(rr.z == r.z);
        CHECK(rr.tau == r.tau);
        CHECK(rr.y == r.y);
        CHECK(sigma(p, reflect(r)) == sigma(p, r));
    }
}

TEST_CASE("mirror conjugates left and right states") {
    const ModelParams p;
    REQUIRE(p.mirror_symmetric());
    for (int i = 0; i < 200; ++i) {
        const ManifoldPoint q{uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const StatePair a = to_state_pair(p, q), b = to_state_pair(p, mirror(q));
        CHECK(dist(b.left, mirror_state(p, a.right)) <= 1e-12 * (1 + std::abs(a.right.u)));
        CHECK(dist(b.right, mirror_state(p, a.left)) <= 1e-12 * (1 + std::abs(a.left.u)));
        CHECK(sigma(p, mirror(q)) == doctest::Approx(2 * p.sigma0() - sigma(p, q)));
    }
}

TEST_CASE("raise_state anchors") {
    const ModelParams p;
    auto close = [](const ManifoldPoint& a, double z, double t) {
        return std::abs(a.z - z) <= 1e-3 && std::abs(a.tau - t) <= 1e-3 && a.y == 0.0;
    };
    CHECK(close(raise_state(p, {-0.85, 3.2}, Family::slow), -2, -2));
    CHECK(close(raise_state(p, {1.6, 7.2}, Family::fast), 2, 4));
    CHECK(close(raise_state(p, {1.413, 6.2}, Family::fast), 2, 3.5));
    CHECK(close(raise_state(p, {-0.898, -4.612}, Family::slow), 2.5, -1.5));
}

TEST_CASE("raise_state round trip, sign split and speeds") {
    const ModelParams p;
    for (int i = 0; i < 2000; ++i) {
        const ManifoldPoint q{uniform(-8, 8), uniform(-6, 6), 0.0};
        if (std::abs(q.tau) < 1e-3) continue;
        const State w = left_state(p, q);
        const Family f = q.tau < 0 ? Family::slow : Family::fast;
        const ManifoldPoint r = raise_state(p, w, f);
        CHECK(std::abs(r.z - q.z) <= 1e-9 * std::max(1.0, std::abs(q.z)));
        CHECK(std::abs(r.tau - q.tau) <= 1e-9 * std::max(1.0, std::abs(q.tau)));
        const auto both = raise_state_both(p, w);
        CHECK(both.first.point.tau * both.second.point.tau < 0.0);
        CHECK(sigma(p, both.first.point) < sigma(p, both.second.point));
        const CharData cd = char_data(p, w);
        CHECK(std::abs(sigma(p, both.first.point) - *cd.lambda_s) <= 1e-8 * std::max(1.0, std::abs(*cd.lambda_s)));
        CHECK(std::abs(sigma(p, both.second.point) - *cd.lambda_f) <= 1e-8 * std::max(1.0, std::abs(*cd.lambda_f)));
    }
}

TEST_CASE("raise_state errors") {
    const ModelParams p;
    CHECK_THROWS_AS(raise_state(p, {0, 0}, Family::slow), EllipticState);
    CHECK_THROWS_AS(raise_state(p, {0, -0.5}, Family::fast), EllipticState);
    // v + a3 = 0 kills the leading coefficient: one lift escapes to infinity.
    try {
        raise_state(p, {0.5, -1.0}, Family::slow);
        FAIL("expected DegenerateRoot");
    } catch (const DegenerateRoot& e) {
        const State w = left_state(p, e.finite_root());
        CHECK(w.u == doctest::Approx(0.5));
        CHECK(w.v == doctest::Approx(-1.0));
    }
    const auto far = raise_state_both(p, left_state(p, {80.0, -0.01, 0.0}));
    CHECK((far.first.near_infinity || far.second.near_infinity));
}
