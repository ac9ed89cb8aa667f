#include "wavemanifold/manifold.hpp"

#include <cmath>
#include <sstream>

namespace wm {

const char* to_string(Family f) { return f == Family::slow ? "slow" : "fast"; }

std::pair<double, double> chart_to_tilde(const ModelParams& p, double z, double tau) {
    const double c = p.c();
    const double w = z * z + 1.0;
    return {2.0 * c * z / w + c * tau * (z * z - 1.0), c / w + c * tau * z};
}

double sigma(const ModelParams& p, double z, double tau) {
    const double c = p.c();
    const double b1 = p.b1;
    return (c / b1) * ((b1 + 1.0) * z * z - 1.0) * tau + (c / b1) * (b1 + 2.0) * z / (z * z + 1.0) +
           p.sigma0();
}

StatePair to_state_pair(const ModelParams& p, const ManifoldPoint& q) {
    const auto [ut, v1] = chart_to_tilde(p, q.z, q.tau);
    const double U = (ut - p.a1 + p.a4) / p.b1;
    const double V = v1 - p.a3;
    const double X = q.z * q.y;
    StatePair sp;
    sp.left = {U + 0.5 * X, V + 0.5 * q.y};
    sp.right = {U - 0.5 * X, V - 0.5 * q.y};
    sp.sigma = sigma(p, q);
    return sp;
}

State left_state(const ModelParams& p, const ManifoldPoint& q) { return to_state_pair(p, q).left; }
State right_state(const ModelParams& p, const ManifoldPoint& q) { return to_state_pair(p, q).right; }

double rh_residual(const ModelParams& p, const StatePair& sp) {
    const auto [fl, gl] = flux(p, sp.left);
    const auto [fr, gr] = flux(p, sp.right);
    const double r1 = fl - fr - sp.sigma * (sp.left.u - sp.right.u);
    const double r2 = gl - gr - sp.sigma * (sp.left.v - sp.right.v);
    return std::hypot(r1, r2);
}

State mirror_state(const ModelParams& p, const State& w) {
    // The chart centre in u is (a4 - a1)/b1, where U-tilde vanishes.
    const double centre = (p.a4 - p.a1) / p.b1;
    return {2.0 * centre - w.u, w.v};
}

namespace {

// tau from the V1 relation, switching to the U-tilde relation near z = 0.
double recover_tau(double c, double z, double ut0, double v10) {
    if (std::abs(z) < 0.1 && std::abs(z * z - 1.0) > 0.5) {
        return (ut0 - 2.0 * c * z / (z * z + 1.0)) / (c * (z * z - 1.0));
    }
    return (v10 - c / (z * z + 1.0)) / (c * z);
}

}  // namespace

std::pair<RaisedPoint, RaisedPoint> raise_state_both(const ModelParams& p, const State& w,
                                                     double z_max) {
    const double delta = discriminant(p, w);
    if (!(delta > 0.0)) {
        std::ostringstream os;
        os << "state (" << w.u << ", " << w.v << ") is not strictly hyperbolic (delta = " << delta
           << ")";
        throw EllipticState(os.str());
    }
    const double c = p.c();
    const double ut0 = p.b1 * w.u + p.a1 - p.a4;
    const double v10 = w.v + p.a3;
    // (z^2 - 1) V1 - z U~ + c = 0  <=>  v10 z^2 - ut0 z + (c - v10) = 0, whose
    // discriminant is exactly delta.
    const double qa = v10;
    const double qb = -ut0;
    const double qc = c - v10;
    const double sq = std::sqrt(delta);
    auto make = [&](double z) {
        RaisedPoint r;
        r.point = {z, recover_tau(c, z, ut0, v10), 0.0};
        r.near_infinity = std::abs(z) > z_max;
        return r;
    };
    if (std::abs(qa) <= 1e-14 * std::max(1.0, std::abs(qb))) {
        const RaisedPoint finite = make(-qc / qb);
        std::ostringstream os;
        os << "lifting quadratic degenerates for (" << w.u << ", " << w.v
           << "); the second root lies at z = infinity";
        throw DegenerateRoot(os.str(), finite.point);
    }
    // Cancellation-free quadratic roots.
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    RaisedPoint r1 = make(q / qa);
    RaisedPoint r2 = make(qc / q);
    if (r1.point.tau > r2.point.tau) std::swap(r1, r2);
    return {r1, r2};
}

ManifoldPoint raise_state(const ModelParams& p, const State& w, Family family) {
    const auto [s, f] = raise_state_both(p, w);
    return family == Family::slow ? s.point : f.point;
}

}  // namespace wm
