#include "wavemanifold/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace wm {

ManifoldPoint IntermediateSurface::at(const CurvePosition& pos, double z) const {
    const ManifoldPoint base = curve->arcs.at(pos.arc).at(pos.param);
    return hugoniot_prime_at(curve->params, base, z);
}

IntermediateSurface build_intermediate_surface(const ModelParams& p, std::shared_ptr<const WaveCurve> curve,
                                               double z_lo, double z_hi, int resolution) {
    if (curve->family != Family::slow) throw Error("intermediate surfaces are built from slow wave curves");
    if (resolution < 2 || !(z_lo < z_hi)) throw EmptyRange("empty intermediate-surface range");
    IntermediateSurface s;
    s.curve = curve;
    s.z_lo = z_lo;
    s.z_hi = z_hi;
    for (std::size_t a = 0; a < curve->arcs.size(); ++a) {
        const auto& arc = curve->arcs[a];
        const std::size_t n = arc.samples.size();
        if (n == 0) continue;
        const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(resolution));
        for (std::size_t k = 0; k < n; k += stride) {
            IntermediateSurface::Fiber f;
            f.position = {a, arc.samples[k].param};
            f.base = arc.samples[k].point;
            f.coeffs = hugoniot_prime_coeffs(p, f.base);
            f.points.reserve(resolution + 1);
            for (int j = 0; j <= resolution; ++j)
                f.points.push_back(hugoniot_at(f.coeffs, z_lo + (z_hi - z_lo) * j / resolution));
            s.fibers.push_back(std::move(f));
        }
    }
    return s;
}

namespace {

struct Seg {
    double x0, y0, x1, y1;
};

// Parameters (alpha, beta) in [0,1]^2 where segments a and b cross.
bool cross(const Seg& a, const Seg& b, double& alpha, double& beta) {
    if (std::max(a.x0, a.x1) < std::min(b.x0, b.x1) || std::max(b.x0, b.x1) < std::min(a.x0, a.x1) ||
        std::max(a.y0, a.y1) < std::min(b.y0, b.y1) || std::max(b.y0, b.y1) < std::min(a.y0, a.y1))
        return false;
    const double dax = a.x1 - a.x0, day = a.y1 - a.y0;
    const double dbx = b.x1 - b.x0, dby = b.y1 - b.y0;
    const double det = dax * (-dby) - (-dbx) * day;
    if (det == 0.0) return false;
    const double rx = b.x0 - a.x0, ry = b.y0 - a.y0;
    alpha = (rx * (-dby) - (-dbx) * ry) / det;
    beta = (dax * ry - day * rx) / det;
    const double e = 1e-9;
    return alpha >= -e && alpha <= 1 + e && beta >= -e && beta <= 1 + e;
}

double clamp_to(const WaveArc& a, double x) {
    return std::clamp(x, std::min(a.param_begin, a.param_end), std::max(a.param_begin, a.param_end));
}

State residual_of(const ModelParams& p, const WaveArc& sa, const WaveArc& fa, double s, double t) {
    const State r = right_state(p, sa.at(s));
    const State l = left_state(p, fa.at(t));
    return {r.u - l.u, r.v - l.v};
}

double norm(const State& w) { return std::hypot(w.u, w.v); }

bool newton_match(const ModelParams& p, const WaveArc& sa, const WaveArc& fa, double& s, double& t,
                  double tol) {
    State f = residual_of(p, sa, fa, s, t);
    for (int it = 0; it < 60; ++it) {
        if (norm(f) <= tol) return true;
        const double hs = 1e-7 * std::max(1.0, std::abs(s));
        const double ht = 1e-7 * std::max(1.0, std::abs(t));
        // One-sided differences pointing into the arc's parameter range.
        const double ds = sa.contains(s + hs) ? hs : -hs;
        const double dt = fa.contains(t + ht) ? ht : -ht;
        const State fs = residual_of(p, sa, fa, s + ds, t);
        const State ft = residual_of(p, sa, fa, s, t + dt);
        const double j11 = (fs.u - f.u) / ds, j21 = (fs.v - f.v) / ds;
        const double j12 = (ft.u - f.u) / dt, j22 = (ft.v - f.v) / dt;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) return false;
        double step_s = -(f.u * j22 - j12 * f.v) / det;
        double step_t = -(j11 * f.v - j21 * f.u) / det;
        // Damped update keeping the iterate on both arcs.
        double lambda = 1.0;
        for (int k = 0; k < 30; ++k) {
            const double sn = clamp_to(sa, s + lambda * step_s);
            const double tn = clamp_to(fa, t + lambda * step_t);
            const State fn = residual_of(p, sa, fa, sn, tn);
            if (norm(fn) < norm(f) || k == 29) {
                s = sn;
                t = tn;
                f = fn;
                break;
            }
            lambda *= 0.5;
        }
    }
    return norm(f) <= tol;
}

std::vector<ElementaryWave> group_waves(const WaveCurve& c, const CurvePosition& pos) {
    return wave_group_at(c, pos);
}

std::pair<double, double> group_speed_range(const std::vector<ElementaryWave>& g) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& w : g) {
        lo = std::min(lo, w.sigma_lo);
        hi = std::max(hi, w.sigma_hi);
    }
    return {lo, hi};
}

}  // namespace

std::vector<Match> match_middle(const ModelParams& p, const WaveCurve& slow, const WaveCurve& fast,
                                const SolverOptions& opt) {
    std::vector<Match> out;
    for (std::size_t i = 0; i < slow.arcs.size(); ++i) {
        const WaveArc& sa = slow.arcs[i];
        std::vector<State> rs;
        for (const auto& smp : sa.samples) rs.push_back(right_state(p, smp.point));
        for (std::size_t j = 0; j < fast.arcs.size(); ++j) {
            const WaveArc& fa = fast.arcs[j];
            std::vector<State> ls;
            for (const auto& smp : fa.samples) ls.push_back(left_state(p, smp.point));
            for (std::size_t a = 0; a + 1 < rs.size(); ++a) {
                const Seg sg{rs[a].u, rs[a].v, rs[a + 1].u, rs[a + 1].v};
                for (std::size_t b = 0; b + 1 < ls.size(); ++b) {
                    const Seg fg{ls[b].u, ls[b].v, ls[b + 1].u, ls[b + 1].v};
                    double al = 0, be = 0;
                    if (!cross(sg, fg, al, be)) continue;
                    double s = sa.samples[a].param + al * (sa.samples[a + 1].param - sa.samples[a].param);
                    double t = fa.samples[b].param + be * (fa.samples[b + 1].param - fa.samples[b].param);
                    s = clamp_to(sa, s);
                    t = clamp_to(fa, t);
                    if (!newton_match(p, sa, fa, s, t, opt.newton_tol)) {
                        if (norm(residual_of(p, sa, fa, s, t)) > opt.accept_tol) continue;
                    }
                    Match m;
                    m.slow = {i, s};
                    m.fast = {j, t};
                    m.u_ms = sa.at(s);
                    m.u_mf = fa.at(t);
                    m.w_m = right_state(p, m.u_ms);
                    m.slow_kind = sa.kind;
                    m.fast_kind = fa.kind;
                    m.residual = norm(residual_of(p, sa, fa, s, t));
                    const ManifoldPoint refl = reflect(m.u_mf);
                    const ManifoldPoint onh = hugoniot_prime_at(p, m.u_ms, refl.z);
                    m.geometric_residual = std::hypot(onh.tau - refl.tau, onh.y - refl.y);
                    bool dup = false;
                    for (auto& o : out) {
                        if (norm({o.w_m.u - m.w_m.u, o.w_m.v - m.w_m.v}) <= 1e-7) {
                            dup = true;
                            if (m.residual < o.residual) o = m;
                        }
                    }
                    if (!dup) out.push_back(m);
                }
            }
        }
    }
    for (auto& m : out) {
        const auto gs = group_speed_range(group_waves(slow, m.slow));
        const auto gf = group_speed_range(group_waves(fast, m.fast));
        m.speed_ordered = !(gs.second > gf.first + 1e-12);
    }
    return out;
}

double surface_intersection_check(const ModelParams& p, const WaveCurve& slow, const WaveCurve& fast,
                                  const Match& m) {
    const WaveArc& sa = slow.arcs.at(m.slow.arc);
    const WaveArc& fa = fast.arcs.at(m.fast.arc);
    double s = m.slow.param;
    double t = m.fast.param;
    // Start the fiber parameter off the answer so the check is not vacuous.
    double z = reflect(m.u_mf).z + 1e-4 * std::max(1.0, std::abs(m.u_mf.z));
    auto G = [&](double ss, double zz, double tt) {
        const ManifoldPoint a = hugoniot_prime_at(p, sa.at(ss), zz);
        const ManifoldPoint b = reflect(fa.at(tt));
        return Eigen::Vector3d(a.z - b.z, a.tau - b.tau, a.y - b.y);
    };
    Eigen::Vector3d g = G(s, z, t);
    for (int it = 0; it < 40 && g.norm() > 1e-13; ++it) {
        Eigen::Matrix3d J;
        const double hs = 1e-7 * std::max(1.0, std::abs(s));
        const double hz = 1e-7 * std::max(1.0, std::abs(z));
        const double ht = 1e-7 * std::max(1.0, std::abs(t));
        const double ds = sa.contains(s + hs) ? hs : -hs;
        const double dt = fa.contains(t + ht) ? ht : -ht;
        J.col(0) = (G(s + ds, z, t) - g) / ds;
        J.col(1) = (G(s, z + hz, t) - g) / hz;
        J.col(2) = (G(s, z, t + dt) - g) / dt;
        const Eigen::Vector3d step = J.fullPivLu().solve(-g);
        if (!step.allFinite()) break;
        s = clamp_to(sa, s + step[0]);
        z += step[1];
        t = clamp_to(fa, t + step[2]);
        g = G(s, z, t);
    }
    const State w = right_state(p, sa.at(s));
    return std::hypot(w.u - m.w_m.u, w.v - m.w_m.v) + g.norm();
}

std::string RiemannSolution::pattern() const {
    if (trivial()) return "trivial";
    const Match& m = primary_match();
    return std::string(to_string(m.slow_kind)) + "+" + to_string(m.fast_kind);
}

RiemannSolution solve(const ModelParams& p, const State& w_left, const State& w_right,
                      const SolverOptions& opt) {
    p.validate();
    if (!is_strictly_hyperbolic(p, w_left)) throw EllipticState("left state is not strictly hyperbolic");
    if (!is_strictly_hyperbolic(p, w_right)) throw EllipticState("right state is not strictly hyperbolic");

    RiemannSolution sol;
    sol.params = p;
    sol.w_left = w_left;
    sol.w_right = w_right;
    sol.u_left = raise_state(p, w_left, Family::slow);
    sol.u_right = raise_state(p, w_right, Family::fast);
    if (w_left.u == w_right.u && w_left.v == w_right.v) {
        sol.notes.push_back("equal states: zero-strength solution");
        return sol;
    }
    sol.slow_curve = std::make_shared<const WaveCurve>(build_slow_wave_curve(p, sol.u_left, opt.curve));
    sol.fast_curve = std::make_shared<const WaveCurve>(build_fast_wave_curve(p, sol.u_right, opt.curve));
    if (sol.slow_curve->truncated) sol.notes.push_back("slow wave curve truncated at z_max");
    if (sol.fast_curve->truncated) sol.notes.push_back("fast wave curve truncated at z_max");

    sol.matches = match_middle(p, *sol.slow_curve, *sol.fast_curve, opt);
    if (sol.matches.empty())
        throw NoIntersection("reflected fast wave curve misses the intermediate surface");

    // Prefer speed-compatible matches; among those, the smallest middle state.
    auto key = [](const Match& m) { return std::make_pair(!m.speed_ordered, std::hypot(m.w_m.u, m.w_m.v)); };
    sol.primary = 0;
    for (std::size_t k = 1; k < sol.matches.size(); ++k)
        if (key(sol.matches[k]) < key(sol.matches[sol.primary])) sol.primary = k;
    if (sol.matches.size() > 1)
        sol.notes.push_back(std::to_string(sol.matches.size()) + " middle states found");

    const Match& m = sol.matches[sol.primary];
    sol.speed_ordered = m.speed_ordered;
    if (!m.speed_ordered) sol.notes.push_back("slow and fast wave groups overlap in speed");
    for (const auto& w : wave_group_at(*sol.slow_curve, m.slow)) sol.waves.push_back(w);
    for (const auto& w : wave_group_at(*sol.fast_curve, m.fast)) sol.waves.push_back(w);
    return sol;
}

State evaluate_profile(const RiemannSolution& sol, double xi) {
    for (const auto& w : sol.waves) {
        if (xi <= w.sigma_lo) return w.left;
        if (w.kind == ElementaryWave::Kind::fan && xi < w.sigma_hi) return fan_state(sol.params, w, xi);
    }
    return sol.w_right;
}

std::pair<double, double> speed_range(const RiemannSolution& sol) {
    if (sol.waves.empty()) return {0.0, 0.0};
    return group_speed_range(sol.waves);
}

}  // namespace wm
