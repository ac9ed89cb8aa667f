#include <doctest.h>

#include <Eigen/Dense>

#include "support.hpp"

using namespace wmtest;

TEST_CASE("flux at reference states") {
    const ModelParams p;
    auto f = flux(p, {0, 0});
    CHECK(f.first == 0.0);
    CHECK(f.second == 0.0);
    // (b1+1)/2 = 4.5 and g = a3 u = 1.
    f = flux(p, {1, 0});
    CHECK(f.first == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(f.second == doctest::Approx(1.0).epsilon(1e-15));
    f = flux(p, {0, 1});
    CHECK(f.first == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(f.second == 0.0);
}

TEST_CASE("derived constants and parameter validation") {
    ModelParams p;
    CHECK(p.c() == 1.0);
    CHECK(p.sigma0() == 0.0);
    CHECK_NOTHROW(p.validate());
    p.b1 = 1.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = ModelParams{};
    p.a2 = 2.0;
    CHECK_THROWS_AS(p.validate(), InvalidParams);
    p = ModelParams{3.0, 0.5, 0.0, 1.0, 0.25};
    CHECK(p.sigma0() == doctest::Approx((4.0 * 0.25 - 0.5) / 3.0));
}

TEST_CASE("char_data on the coincidence ellipse and at Example 2") {
    const ModelParams p;
    // At u = 0, delta = 4 v (v + 1): zero at v = 0 and v = -1.
    for (double v : {0.0, -1.0}) {
        const CharData cd = char_data(p, {0.0, v});
        CHECK(cd.delta == 0.0);
        REQUIRE(cd.lambda_s.has_value());
        CHECK(*cd.lambda_s == *cd.lambda_f);
    }
    const CharData cd = char_data(p, {-0.85, 3.2});
    REQUIRE(cd.lambda_s.has_value());
    CHECK(*cd.lambda_s == doctest::Approx(sigma(p, -2.0, -2.0)).epsilon(1e-12));
    CHECK(discriminant(p, {0, 0}) == 0.0);
}

TEST_CASE("hyperbolicity predicate") {
    const ModelParams p;
    CHECK_FALSE(is_strictly_hyperbolic(p, {0, 0}));
    CHECK(is_strictly_hyperbolic(p, {-0.85, 3.2}));
    // Between the ellipse branches at u = 0.
    CHECK_FALSE(is_strictly_hyperbolic(p, {0.0, -0.5}));
    const CharData cd = char_data(p, {0.0, -0.5});
    CHECK(cd.elliptic());
    CHECK_FALSE(cd.lambda_s.has_value());
}

TEST_CASE("eigenvalues agree with a finite-difference Jacobian") {
    const ModelParams p;
    int checked = 0;
    while (checked < 1000) {
        const State w{uniform(-3, 3), uniform(-6, 6)};
        if (discriminant(p, w) <= 1e-3) continue;
        const CharData cd = char_data(p, w);
        const auto ev = speeds(p, w);
        CHECK(std::abs(*cd.lambda_s - ev.first) <= 1e-8);
        CHECK(std::abs(*cd.lambda_f - ev.second) <= 1e-8);
        // Closed-form delta against the characteristic polynomial of DF.
        const Mat2 j = jacobian(p, w);
        const double tr = j[0][0] + j[1][1];
        const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        CHECK(std::abs(discriminant(p, w) - (tr * tr - 4 * det)) <= 1e-10 * std::max(1.0, std::abs(tr * tr)));
        ++checked;
    }
}

TEST_CASE("zero set of delta is an ellipse") {
    const ModelParams p;
    // Sample delta = 0 by solving for v at fixed u, then fit a general conic.
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 40; ++i) {
        const double u = -0.12 + 0.24 * i / 39.0;
        const double s = p.b1 * u + p.a1 - p.a4;
        // 4 v^2 + 4 (a2 + a3) v + 4 a2 a3 + s^2 = 0
        const double A = 4, B = 4 * (p.a2 + p.a3), C = 4 * p.a2 * p.a3 + s * s;
        const double d = B * B - 4 * A * C;
        if (d < 0) continue;
        pts.push_back({u, (-B + std::sqrt(d)) / (2 * A)});
        pts.push_back({u, (-B - std::sqrt(d)) / (2 * A)});
    }
    REQUIRE(pts.size() >= 10);
    Eigen::MatrixXd M(pts.size(), 6);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = pts[i].first, y = pts[i].second;
        M.row(i) << x * x, x * y, y * y, x, y, 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const Eigen::VectorXd k = svd.matrixV().col(5);
    CHECK(k[1] * k[1] - 4 * k[0] * k[2] < 0.0);
    for (const auto& [u, v] : pts) CHECK(std::abs(discriminant(p, {u, v})) <= 1e-12);
}

TEST_CASE("spectral radius bounds the speeds") {
    const ModelParams p;
    for (int i = 0; i < 200; ++i) {
        const State w{uniform(-3, 3), uniform(-6, 6)};
        const double r = spectral_radius(p, w);
        const CharData cd = char_data(p, w);
        if (cd.lambda_s) {
            CHECK(r >= std::abs(*cd.lambda_s) - 1e-12);
            CHECK(r >= std::abs(*cd.lambda_f) - 1e-12);
        } else {
            CHECK(r > 0.0);
        }
    }
}
