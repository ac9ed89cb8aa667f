#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "wavemanifold/fv_oracle.hpp"
#include "wavemanifold/io.hpp"
#include "wavemanifold/riemann.hpp"

namespace wmtest {

using namespace wm;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20261016);
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// Eigenvalues of an explicit 2x2 matrix, sorted. NaNs when complex.
inline std::pair<double, double> eig2(const Mat2& m) {
    const double tr = m[0][0] + m[1][1];
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double d = tr * tr - 4.0 * det;
    if (d < 0.0) return {NAN, NAN};
    const double s = std::sqrt(d);
    return {0.5 * (tr - s), 0.5 * (tr + s)};
}

// Jacobian of the flux by central differences; never calls wm::jacobian.
inline Mat2 fd_jacobian(const ModelParams& p, const State& w, double h = 1e-6) {
    const auto fu1 = flux(p, {w.u + h, w.v});
    const auto fu0 = flux(p, {w.u - h, w.v});
    const auto fv1 = flux(p, {w.u, w.v + h});
    const auto fv0 = flux(p, {w.u, w.v - h});
    return {{{(fu1.first - fu0.first) / (2 * h), (fv1.first - fv0.first) / (2 * h)},
             {(fu1.second - fu0.second) / (2 * h), (fv1.second - fv0.second) / (2 * h)}}};
}

// Characteristic speeds from the finite-difference Jacobian.
inline std::pair<double, double> speeds(const ModelParams& p, const State& w) {
    return eig2(fd_jacobian(p, w));
}

// Strict Lax inequalities evaluated directly in state space.
inline bool lax_slow(const ModelParams& p, const ManifoldPoint& q) {
    const StatePair sp = to_state_pair(p, q);
    const auto l = speeds(p, sp.left);
    const auto r = speeds(p, sp.right);
    if (std::isnan(l.first) || std::isnan(r.first)) return false;
    const double s = sp.sigma;
    return s < l.first && r.first < s && s < r.second;
}

inline bool lax_fast(const ModelParams& p, const ManifoldPoint& q) {
    const StatePair sp = to_state_pair(p, q);
    const auto l = speeds(p, sp.left);
    const auto r = speeds(p, sp.right);
    if (std::isnan(l.first) || std::isnan(r.first)) return false;
    const double s = sp.sigma;
    return l.first < s && s < l.second && r.second < s;
}

// Son' label by brute force: which C-intersection of H(U) shares U's speed.
// Returns 0 when H(U) misses C.
inline int brute_son_prime_label(const ModelParams& p, const ManifoldPoint& u) {
    const auto xs = intersections_with_C(hugoniot_coeffs(p, u));
    if (xs.size() != 2) return 0;
    const double s = sigma(p, u);
    const double ds = std::abs(sigma(p, xs[0].point) - s);
    const double df = std::abs(sigma(p, xs[1].point) - s);
    return ds < df ? 1 : 2;
}

// Random point of C_s, away from E and from the inflection locus.
inline ManifoldPoint random_cs_point(const ModelParams& p, double zlo = -3.0, double zhi = 3.0) {
    for (;;) {
        const double z = uniform(zlo, zhi);
        const double tau = -uniform(0.05, 4.0);
        if (std::abs(z) < 0.05) continue;
        const double g = inflection_indicator(p, z, tau);
        if (std::abs(g) < 0.05) continue;
        return {z, tau, 0.0};
    }
}

inline double dist(const ManifoldPoint& a, const ManifoldPoint& b) {
    return std::sqrt((a.z - b.z) * (a.z - b.z) + (a.tau - b.tau) * (a.tau - b.tau) + (a.y - b.y) * (a.y - b.y));
}

inline double dist(const State& a, const State& b) { return std::hypot(a.u - b.u, a.v - b.v); }

}  // namespace wmtest
