#include "wavemanifold/fv_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace wm {

void GridSpec::validate() const {
    if (!(x_lo < x_hi)) throw ConfigError("grid domain is empty");
    if (cells < 16) throw ConfigError("grid needs at least 16 cells");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("CFL number must lie in (0, 1]");
    if (!(t_end > 0.0)) throw ConfigError("end time must be positive");
}

double FvProfile::conservation_error() const {
    const double du = mass_final.u - (mass_initial.u - boundary_outflow.u);
    const double dv = mass_final.v - (mass_initial.v - boundary_outflow.v);
    const double scale = std::max({1.0, std::abs(mass_initial.u), std::abs(mass_initial.v)});
    return std::hypot(du, dv) / scale;
}

namespace {

struct Flux {
    double f, g;
};

Flux rusanov(const ModelParams& p, const State& a, const State& b, double ra, double rb) {
    const auto fa = flux(p, a);
    const auto fb = flux(p, b);
    const double alpha = std::max(ra, rb);
    return {0.5 * (fa.first + fb.first) - 0.5 * alpha * (b.u - a.u),
            0.5 * (fa.second + fb.second) - 0.5 * alpha * (b.v - a.v)};
}

}  // namespace

FvProfile simulate(const ModelParams& p, const State& w_left, const State& w_right, const GridSpec& grid,
                   double max_speed) {
    grid.validate();
    const double bound = std::max({max_speed, spectral_radius(p, w_left), spectral_radius(p, w_right)});
    const double reach = bound * grid.t_end;
    if (reach >= std::min(-grid.x_lo, grid.x_hi))
        throw WaveLeftDomain("waves can reach the domain ends before the end time");

    const int n = grid.cells;
    const double dx = grid.dx();
    FvProfile out;
    out.grid = grid;
    out.x.resize(n);
    std::vector<State> w(n);
    for (int i = 0; i < n; ++i) {
        out.x[i] = grid.x_lo + (i + 0.5) * dx;
        w[i] = out.x[i] < 0.0 ? w_left : w_right;
    }
    auto mass = [&](const std::vector<State>& s) {
        State m{0.0, 0.0};
        for (const auto& c : s) {
            m.u += c.u * dx;
            m.v += c.v * dx;
        }
        return m;
    };
    out.mass_initial = mass(w);

    std::vector<double> rho(n);
    std::vector<Flux> fx(n + 1);
    std::vector<State> next(n);
    double t = 0.0;
    while (t < grid.t_end) {
        double amax = 0.0;
        for (int i = 0; i < n; ++i) {
            rho[i] = spectral_radius(p, w[i]);
            amax = std::max(amax, rho[i]);
            if (discriminant(p, w[i]) < 0.0) ++out.elliptic_events;
        }
        double dt = amax > 0.0 ? grid.cfl * dx / amax : grid.t_end - t;
        if (t + dt > grid.t_end) dt = grid.t_end - t;
        // Transmissive ends: ghost cells copy the boundary cells.
        for (int i = 0; i <= n; ++i) {
            const int a = std::max(i - 1, 0);
            const int b = std::min(i, n - 1);
            fx[i] = rusanov(p, w[a], w[b], rho[a], rho[b]);
        }
        for (int i = 0; i < n; ++i) {
            next[i].u = w[i].u - dt / dx * (fx[i + 1].f - fx[i].f);
            next[i].v = w[i].v - dt / dx * (fx[i + 1].g - fx[i].g);
        }
        out.boundary_outflow.u += dt * (fx[n].f - fx[0].f);
        out.boundary_outflow.v += dt * (fx[n].g - fx[0].g);
        w.swap(next);
        t += dt;
        ++out.steps;
    }
    out.t = t;
    out.mass_final = mass(w);
    for (int i = 0; i < n; ++i)
        if (discriminant(p, w[i]) < 0.0) out.elliptic_cells.push_back(i);
    out.w = std::move(w);
    return out;
}

GridSpec default_grid(const RiemannSolution& sol, int cells) {
    GridSpec g;
    g.cells = cells;
    double smax = 0.0;
    for (const auto& w : sol.waves) smax = std::max({smax, std::abs(w.sigma_lo), std::abs(w.sigma_hi)});
    if (smax == 0.0)
        smax = std::max(spectral_radius(sol.params, sol.w_left), spectral_radius(sol.params, sol.w_right));
    if (smax == 0.0) smax = 1.0;
    g.t_end = 0.8 * std::min(-g.x_lo, g.x_hi) / smax;
    return g;
}

ProfileComparison compare_profiles(const RiemannSolution& sol, const FvProfile& profile) {
    ProfileComparison c;
    const double dx = profile.grid.dx();
    const double t = profile.t;
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        const State e = evaluate_profile(sol, profile.x[i] / t);
        c.l1_u += std::abs(profile.w[i].u - e.u) * dx;
        c.l1_v += std::abs(profile.w[i].v - e.v) * dx;
    }
    c.l1 = c.l1_u + c.l1_v;
    const auto range = speed_range(sol);
    const double jump = std::hypot(sol.w_right.u - sol.w_left.u, sol.w_right.v - sol.w_left.v);
    c.scale = jump * (range.second - range.first) * t;

    const double window = 0.05 * (profile.grid.x_hi - profile.grid.x_lo);
    for (const auto& w : sol.waves) {
        if (w.kind != ElementaryWave::Kind::shock) continue;
        WaveLocation loc;
        loc.sigma = w.sigma_lo;
        loc.expected_x = w.sigma_lo * t;
        double best = -1.0;
        for (std::size_t i = 0; i + 1 < profile.x.size(); ++i) {
            const double xm = 0.5 * (profile.x[i] + profile.x[i + 1]);
            if (std::abs(xm - loc.expected_x) > window) continue;
            const double d = std::hypot(profile.w[i + 1].u - profile.w[i].u, profile.w[i + 1].v - profile.w[i].v);
            if (d > best) {
                best = d;
                loc.numeric_x = xm;
            }
        }
        c.shocks.push_back(loc);
    }
    return c;
}

}  // namespace wm
