#include <doctest.h>

#include <Eigen/Dense>

#include "support.hpp"

using namespace wmtest;

namespace {
ManifoldPoint random_point(double r = 3.0) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }
}  // namespace

TEST_CASE("curves pass through their base point") {
    const ModelParams p;
    for (int i = 0; i < 200; ++i) {
        const ManifoldPoint b = random_point();
        CHECK(dist(hugoniot_at(hugoniot_coeffs(p, b), b.z), b) <= 1e-12 * (1 + std::abs(b.tau) + std::abs(b.y)));
        CHECK(dist(hugoniot_prime_at(p, b, b.z), b) <= 1e-12 * (1 + std::abs(b.tau) + std::abs(b.y)));
    }
}

TEST_CASE("closed form agrees with the linear-system solve") {
    const ModelParams p;
    for (Branch br : {Branch::hugoniot, Branch::hugoniot_prime}) {
        for (int i = 0; i < 10000; ++i) {
            const ManifoldPoint b = random_point();
            const double z = uniform(-4, 4);
            const ManifoldPoint a = hugoniot_at(hugoniot_coeffs(p, b, br), z);
            const ManifoldPoint r = hugoniot_reference_at(p, b, z, br);
            CHECK(dist(a, r) <= 1e-8 * (1 + std::abs(r.tau) + std::abs(r.y)));
        }
    }
}

TEST_CASE("left state is constant along Hugoniot curves, right state along Hugoniot'") {
    const ModelParams p;
    for (int k = 0; k < 20; ++k) {
        const ManifoldPoint b = random_point();
        const State wl = left_state(p, b), wr = right_state(p, b);
        const auto h = hugoniot_coeffs(p, b);
        for (int i = 0; i < 100; ++i) {
            const double z = uniform(-6, 6);
            CHECK(dist(left_state(p, hugoniot_at(h, z)), wl) <= 1e-8);
            CHECK(dist(right_state(p, hugoniot_prime_at(p, b, z)), wr) <= 1e-8);
            const ManifoldPoint hp = hugoniot_prime_at(p, b, z);
            const ManifoldPoint via = reflect(hugoniot_at(hugoniot_coeffs(p, reflect(b)), z));
            CHECK(dist(hp, via) == 0.0);
        }
    }
}

TEST_CASE("second characteristic intersection of H(-2,-2,0)") {
    const ModelParams p;
    const auto h = hugoniot_coeffs(p, {-2, -2, 0});
    // z1 = -[tau0 (1 + z0^2) - z0] / [tau0 z0 (1 + z0^2) + 1] = 8/21.
    const ManifoldPoint q = hugoniot_at(h, 8.0 / 21.0);
    CHECK(std::abs(q.y) <= 1e-12);
    const auto xs = intersections_with_C(h);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0].family == Family::slow);
    CHECK(xs[0].point.z == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(xs[1].family == Family::fast);
    CHECK(xs[1].point.z == doctest::Approx(8.0 / 21.0).epsilon(1e-12));
    CHECK(xs[1].point.tau > 0.0);
    CHECK(sigma(p, xs[0].point) < sigma(p, xs[1].point));
}

TEST_CASE("tangency at the coincidence curve and the discriminant identity") {
    const ModelParams p;
    for (double z0 : {-3.0, -0.4, 0.2, 1.7}) {
        const auto xs = intersections_with_C(hugoniot_coeffs(p, {z0, 0, 0}));
        REQUIRE(xs.size() == 1);
        CHECK(xs[0].point.z == doctest::Approx(z0).epsilon(1e-9));
    }
    for (int i = 0; i < 1000; ++i) {
        const ManifoldPoint b{uniform(-3, 3), uniform(-3, 3), 0.0};
        const auto h = hugoniot_coeffs(p, b);
        const double th = b.z * b.z + 1;
        const double expect = 4 * p.c() * p.c() * b.tau * b.tau * th * th * th * th;
        CHECK(std::abs(h.c_discriminant() - expect) <= 1e-9 * std::max(1.0, expect));
    }
}

TEST_CASE("sigma difference between the two C-intersections") {
    const ModelParams p;
    for (int i = 0; i < 1000; ++i) {
        const ManifoldPoint b{uniform(-3, 3), uniform(-3, 3), 0.0};
        if (std::abs(b.tau) < 1e-3) continue;
        const auto h = hugoniot_coeffs(p, b);
        const double th = b.z * b.z + 1;
        const double z1 = -(b.tau * th - b.z) / (b.tau * b.z * th + 1);
        const double d = sigma(p, b) - sigma_along_hugoniot(h, z1);
        CHECK(std::abs(d - p.c() * th * b.tau) <= 1e-9 * std::max(1.0, std::abs(d)));
    }
}

TEST_CASE("speed along the curve") {
    const ModelParams p;
    for (int k = 0; k < 50; ++k) {
        const ManifoldPoint b = random_point();
        const auto h = hugoniot_coeffs(p, b);
        CHECK(sigma_along_hugoniot(h, b.z) == doctest::Approx(sigma(p, b)).epsilon(1e-10));
        for (int i = 0; i < 100; ++i) {
            const double z = uniform(-5, 5);
            const double s = sigma(p, hugoniot_at(h, z));
            CHECK(std::abs(sigma_along_hugoniot(h, z) - s) <= 1e-10 * std::max(1.0, std::abs(s)));
            const double e = 1e-6;
            const double fd = (sigma_along_hugoniot(h, z + e) - sigma_along_hugoniot(h, z - e)) / (2 * e);
            CHECK(std::abs(dsigma_dz_along_hugoniot(h, z) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("foliation: points of one curve generate the same curve") {
    const ModelParams p;
    for (int k = 0; k < 50; ++k) {
        const ManifoldPoint b = random_point();
        const auto h = hugoniot_coeffs(p, b);
        const ManifoldPoint other = hugoniot_at(h, uniform(-3, 3));
        const auto h2 = hugoniot_coeffs(p, other);
        for (int i = 0; i < 20; ++i) {
            const double z = uniform(-3, 3);
            const ManifoldPoint a = hugoniot_at(h, z), c = hugoniot_at(h2, z);
            CHECK(dist(a, c) <= 1e-8 * (1 + std::abs(a.tau) + std::abs(a.y)));
        }
    }
}

TEST_CASE("critical speeds along Hugoniot curves lie on Son") {
    const ModelParams p;
    int found = 0;
    for (int k = 0; k < 200; ++k) {
        const auto h = hugoniot_coeffs(p, random_point());
        // Independent detection of sign changes of the speed derivative.
        double prev_z = -6, prev = dsigma_dz_along_hugoniot(h, prev_z);
        for (int i = 1; i <= 1200; ++i) {
            const double z = -6 + 12.0 * i / 1200;
            const double cur = dsigma_dz_along_hugoniot(h, z);
            if ((cur > 0) != (prev > 0)) {
                double a = prev_z, b = z, fa = prev;
                for (int it = 0; it < 100; ++it) {
                    const double m = 0.5 * (a + b), fm = dsigma_dz_along_hugoniot(h, m);
                    if ((fm > 0) == (fa > 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                const ManifoldPoint q = hugoniot_at(h, 0.5 * (a + b));
                const double scale = 1 + std::abs(q.tau) + std::abs(q.y);
                CHECK(std::abs(son_residuals(p, q).son) <= 1e-6 * scale);
                bool listed = false;
                for (double r : sigma_critical_points(h)) listed |= std::abs(r - q.z) <= 1e-6;
                CHECK(listed);
                ++found;
            }
            prev = cur;
            prev_z = z;
        }
    }
    CHECK(found > 50);
}

namespace {
// Point-in-polygon on a (tau, Y) slice.
bool inside_polygon(const std::vector<std::pair<double, double>>& poly, double x, double y) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const auto [xi, yi] = poly[i];
        const auto [xj, yj] = poly[j];
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
    }
    return in;
}
}  // namespace

TEST_CASE("intersection count matches SCC slice geometry") {
    const ModelParams p;
    for (double z : {-2.0, -0.7, 0.4, 1.5}) {
        // The slice of SCC at this z is traced by the Hugoniot curves of all
        // coincidence points; parametrize z0 = z + tan(theta).
        std::vector<std::pair<double, double>> poly;
        double tlo = 1e9, thi = -1e9, ylo = 1e9;
        for (int i = 1; i < 4000; ++i) {
            const double th = -M_PI / 2 + M_PI * i / 4000;
            const ManifoldPoint q = scc_point(p, z + std::tan(th), z);
            poly.push_back({q.tau, q.y});
            tlo = std::min(tlo, q.tau);
            thi = std::max(thi, q.tau);
            ylo = std::min(ylo, q.y);
        }
        // Midpoint of the slice is inside: its Hugoniot curve misses C.
        const ManifoldPoint mid{z, 0.5 * (tlo + thi), 0.5 * ylo};
        REQUIRE(inside_polygon(poly, mid.tau, mid.y));
        CHECK(intersections_with_C(hugoniot_coeffs(p, mid)).empty());
        int agree = 0, total = 0;
        for (int i = 0; i < 2000; ++i) {
            const ManifoldPoint q{z, uniform(tlo - 1, thi + 1), uniform(ylo - 1, 1)};
            const bool in = inside_polygon(poly, q.tau, q.y);
            const auto xs = intersections_with_C(hugoniot_coeffs(p, q));
            if (std::abs(hugoniot_coeffs(p, q).c_discriminant()) < 1e-6) continue;
            ++total;
            if ((in && xs.empty()) || (!in && xs.size() == 2)) ++agree;
            CHECK(inside_scc(p, q) == xs.empty());
        }
        CHECK(agree >= total - 2);  // polygon discretization near the boundary
    }
}
