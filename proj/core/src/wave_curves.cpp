#include "wavemanifold/wave_curves.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

namespace wm {

const char* to_string(ArcKind k) {
    switch (k) {
        case ArcKind::shock: return "shock";
        case ArcKind::rarefaction: return "rarefaction";
        case ArcKind::composite: return "composite";
    }
    return "?";
}

const char* to_string(Structure s) {
    switch (s) {
        case Structure::Case1: return "Case1";
        case Structure::Case2_1: return "Case2_1";
        case Structure::Case2_2: return "Case2_2";
    }
    return "?";
}

namespace {

// Root of f on [a, b] where f(a), f(b) bracket zero.
template <class F>
double solve_bracket(F f, double a, double b, double fa, double fb) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    boost::uintmax_t iters = 200;
    auto tol = [](double x, double y) { return std::abs(x - y) <= 1e-14 * std::max(1.0, std::abs(x)); };
    const auto r = boost::math::tools::toms748_solve(f, std::min(a, b), std::max(a, b),
                                                     a < b ? fa : fb, a < b ? fb : fa, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

bool WaveArc::contains(double param) const {
    const double lo = std::min(param_begin, param_end);
    const double hi = std::max(param_begin, param_end);
    const double slack = 1e-12 * std::max(1.0, std::abs(hi) + std::abs(lo));
    return param >= lo - slack && param <= hi + slack;
}

ManifoldPoint WaveArc::at(double param) const {
    switch (kind) {
        case ArcKind::shock:
            return hugoniot_at(*hugoniot_, param);
        case ArcKind::rarefaction:
            return rarefaction_point(params_, *rarefaction_, param);
        case ArcKind::composite: {
            // Continue the root branch recorded while the arc was traced.
            const auto& tr = composite_->samples;
            const ArcSample* best = &tr.front();
            for (const auto& s : tr)
                if (std::abs(s.param - param) < std::abs(best->param - param)) best = &s;
            return composite_point(params_, *rarefaction_, family, param, best->point.z);
        }
    }
    return {};
}

ManifoldPoint WaveArc::sonic_image(double param) const {
    if (kind == ArcKind::shock) throw Error("shock arcs have no sonic image");
    return rarefaction_point(params_, *rarefaction_, param);
}

std::string WaveCurve::structure_string() const {
    // Arcs are read left to right through the base, so the first (backward)
    // arc is written toward U0 and its speed arrow flips.
    const char f = family == Family::slow ? 's' : 'f';
    auto tag = [&](const WaveArc& a, bool flip) {
        const std::string k = a.kind == ArcKind::shock ? "S" : a.kind == ArcKind::rarefaction ? "R" : "Co";
        const bool up = a.sigma_increasing != flip;
        return k + "_" + f + (up ? "\u2197" : "\u2198");
    };
    std::string out;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (i > 0) out += ' ';
        out += tag(arcs[i], i == 0);
        if (i == 0) out += " U0";
    }
    return out;
}

std::shared_ptr<const OdeArc> WaveCurve::rarefaction() const {
    for (const auto& a : arcs)
        if (a.kind == ArcKind::rarefaction) return a.source();
    throw Error("wave curve has no rarefaction arc");
}

class WaveCurveBuilder {
public:
    WaveCurveBuilder(const ModelParams& p, const CurveOptions& opt) : p_(p), opt_(opt) {}

    WaveCurve build(const ManifoldPoint& u0, Family family) {
        check_base(u0, family);
        WaveCurve wc;
        wc.params = p_;
        wc.base = u0;
        wc.family = family;
        const Branch branch = family == Family::slow ? Branch::hugoniot : Branch::hugoniot_prime;
        // Slow shocks and the slow trailing shock decrease speed; fast ones increase it.
        const bool shock_inc = family == Family::fast;
        const HugoniotCoeffs h = hugoniot_coeffs(p_, u0, branch);

        wc.arcs.push_back(shock_arc(h, u0.z, shock_inc, family));

        OdeOptions ode = opt_.ode;
        ode.z_max = opt_.z_max;
        auto raref = std::make_shared<const OdeArc>(integrate_rarefaction(p_, u0, family, ode));
        wc.arcs.push_back(rarefaction_arc(raref));
        wc.structure = Structure::Case1;

        if (raref->termination == Termination::hit_inflection && raref->samples.size() > 1) {
            auto comp = std::make_shared<const OdeArc>(integrate_composite(p_, *raref, ode));
            wc.arcs.push_back(composite_arc(raref, comp));
            if (comp->termination == Termination::hit_hugoniot_of_origin) {
                wc.structure = Structure::Case2_2;
                const double z3 = comp->back().point.z;
                wc.arcs.push_back(shock_arc(h, z3, shock_inc, family));
            } else {
                wc.structure = Structure::Case2_1;
            }
        }
        for (const auto& a : wc.arcs)
            if (a.termination == Termination::truncated_at_zmax) wc.truncated = true;
        return wc;
    }

private:
    void check_base(const ManifoldPoint& u0, Family family) const {
        if (u0.y != 0.0) throw BasePointOnBoundary("wave-curve base must lie on the characteristic plane");
        if (u0.tau == 0.0) throw BasePointOnBoundary("wave-curve base lies on the coincidence curve");
        if ((family == Family::slow) != (u0.tau < 0.0))
            throw NotInCs(std::string("base point is not in C_") + (family == Family::slow ? "s" : "f"));
        const double g = inflection_indicator(p_, u0.z, u0.tau);
        if (std::abs(g) <= 1e-12 * std::max(1.0, std::abs(u0.tau)))
            throw BasePointOnBoundary("wave-curve base lies on the inflection locus");
    }

    WaveArc base_arc(ArcKind kind, Family family) const {
        WaveArc a;
        a.kind = kind;
        a.family = family;
        a.params_ = p_;
        return a;
    }

    // Shock arc along h from z_start in the requested speed direction, cut
    // at the first critical point of the speed or at |z| = z_max.
    WaveArc shock_arc(const HugoniotCoeffs& h, double z_start, bool increasing, Family family) {
        WaveArc a = base_arc(ArcKind::shock, family);
        a.hugoniot_ = h;
        a.sigma_increasing = increasing;
        double slope = dsigma_dz_along_hugoniot(h, z_start);
        if (std::abs(slope) < 1e-13) {
            const double dz = 1e-6 * std::max(1.0, std::abs(z_start));
            slope = sigma_along_hugoniot(h, z_start + dz) - sigma_along_hugoniot(h, z_start - dz);
        }
        const double dir = ((slope > 0.0) == increasing) ? 1.0 : -1.0;
        const double eps = 1e-9 * std::max(1.0, std::abs(z_start));
        double z_end = dir * opt_.z_max;
        a.termination = Termination::truncated_at_zmax;
        for (double zc : sigma_critical_points(h)) {
            if ((zc - z_start) * dir > eps && std::abs(zc) < opt_.z_max &&
                std::abs(zc - z_start) < std::abs(z_end - z_start)) {
                z_end = zc;
                a.termination = Termination::hit_son_f;
            }
        }
        a.param_begin = z_start;
        a.param_end = z_end;
        std::vector<double> grid(2001);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = z_start + (z_end - z_start) * static_cast<double>(i) / (grid.size() - 1);
        resample(a, grid);
        return a;
    }

    WaveArc rarefaction_arc(std::shared_ptr<const OdeArc> raref) {
        WaveArc a = base_arc(ArcKind::rarefaction, raref->family);
        a.rarefaction_ = raref;
        a.sigma_increasing = raref->sigma_increasing;
        a.termination = raref->termination;
        a.param_begin = raref->front().param;
        a.param_end = raref->back().param;
        std::vector<double> grid;
        for (const auto& s : raref->samples) grid.push_back(s.param);
        resample(a, grid);
        return a;
    }

    WaveArc composite_arc(std::shared_ptr<const OdeArc> raref, std::shared_ptr<const OdeArc> comp) {
        WaveArc a = base_arc(ArcKind::composite, comp->family);
        a.rarefaction_ = raref;
        a.composite_ = comp;
        a.sigma_increasing = comp->sigma_increasing;
        a.termination = comp->termination;
        a.param_begin = comp->front().param;
        a.param_end = comp->back().param;
        std::vector<double> grid;
        for (const auto& s : comp->samples) grid.push_back(s.param);
        resample(a, grid);
        return a;
    }

    // Replace the arc's samples by roughly samples_per_arc points equally
    // spaced in sigma, located by bracketing on the dense parameter grid.
    void resample(WaveArc& a, const std::vector<double>& grid) {
        std::vector<double> sg(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) sg[i] = a.sigma_at(grid[i]);
        const int n = std::max(1, opt_.samples_per_arc);
        a.samples.clear();
        auto push = [&](double prm) {
            const ManifoldPoint q = a.at(prm);
            a.samples.push_back({prm, q, sigma(p_, q)});
        };
        push(grid.front());
        if (grid.size() < 2 || sg.front() == sg.back()) {
            if (grid.back() != grid.front()) push(grid.back());
            return;
        }
        std::size_t j = 0;
        for (int k = 1; k < n; ++k) {
            const double target = sg.front() + (sg.back() - sg.front()) * k / n;
            while (j + 1 < grid.size() && (sg[j + 1] - target) * (sg.back() - sg.front()) < 0.0) ++j;
            if (j + 1 >= grid.size()) break;
            auto f = [&](double prm) { return a.sigma_at(prm) - target; };
            push(solve_bracket(f, grid[j], grid[j + 1], sg[j] - target, sg[j + 1] - target));
        }
        push(grid.back());
    }

    ModelParams p_;
    CurveOptions opt_;
};

WaveCurve build_wave_curve(const ModelParams& p, const ManifoldPoint& u0, Family family,
                           const CurveOptions& opt) {
    return WaveCurveBuilder(p, opt).build(u0, family);
}

WaveCurve build_slow_wave_curve(const ModelParams& p, const ManifoldPoint& u0, const CurveOptions& opt) {
    return build_wave_curve(p, u0, Family::slow, opt);
}

WaveCurve build_fast_wave_curve(const ModelParams& p, const ManifoldPoint& u0, const CurveOptions& opt) {
    return build_wave_curve(p, u0, Family::fast, opt);
}

std::vector<ElementaryWave> wave_group_at(const WaveCurve& curve, const CurvePosition& pos) {
    if (pos.arc >= curve.arcs.size()) throw OutOfRange("no such arc on the wave curve");
    const WaveArc& arc = curve.arcs[pos.arc];
    if (!arc.contains(pos.param)) throw OutOfRange("parameter outside the arc");
    const ModelParams& p = curve.params;
    const bool slow = curve.family == Family::slow;
    const State w0 = left_state(p, curve.base);
    std::vector<ElementaryWave> out;

    const ManifoldPoint q = arc.at(pos.param);
    if (arc.kind == ArcKind::shock) {
        if (std::abs(pos.param - curve.base.z) <= 1e-14 && arc.param_begin == curve.base.z) return out;
        ElementaryWave s;
        s.kind = ElementaryWave::Kind::shock;
        s.family = curve.family;
        s.sigma_lo = s.sigma_hi = sigma(p, q);
        s.left = slow ? w0 : left_state(p, q);
        s.right = slow ? right_state(p, q) : w0;
        out.push_back(s);
        return out;
    }

    const std::shared_ptr<const OdeArc> raref_ptr = arc.source();
    const ManifoldPoint r = arc.kind == ArcKind::rarefaction ? q : arc.sonic_image(pos.param);
    if (r.z == curve.base.z && arc.kind == ArcKind::rarefaction) return out;

    ElementaryWave fan;
    fan.kind = ElementaryWave::Kind::fan;
    fan.family = curve.family;
    fan.rarefaction = raref_ptr;
    fan.param_lo = curve.base.z;
    fan.param_hi = r.z;
    const double s_base = sigma(p, curve.base);
    const double s_r = sigma(p, r);
    fan.sigma_lo = std::min(s_base, s_r);
    fan.sigma_hi = std::max(s_base, s_r);
    fan.left = slow ? w0 : left_state(p, r);
    fan.right = slow ? left_state(p, r) : w0;

    if (arc.kind == ArcKind::rarefaction) {
        out.push_back(fan);
        return out;
    }
    ElementaryWave s;
    s.kind = ElementaryWave::Kind::shock;
    s.family = curve.family;
    s.sigma_lo = s.sigma_hi = s_r;
    if (slow) {
        s.left = left_state(p, r);
        s.right = right_state(p, q);
        out.push_back(fan);
        out.push_back(s);
    } else {
        s.left = left_state(p, q);
        s.right = left_state(p, r);
        out.push_back(s);
        out.push_back(fan);
    }
    return out;
}

State fan_state(const ModelParams& p, const ElementaryWave& fan, double xi) {
    if (fan.kind != ElementaryWave::Kind::fan || !fan.rarefaction) throw Error("not a fan");
    xi = std::clamp(xi, fan.sigma_lo, fan.sigma_hi);
    auto f = [&](double z) { return sigma(p, rarefaction_point(p, *fan.rarefaction, z)) - xi; };
    const double fa = f(fan.param_lo);
    const double fb = f(fan.param_hi);
    if (std::abs(fa) <= 1e-15) return left_state(p, rarefaction_point(p, *fan.rarefaction, fan.param_lo));
    if (std::abs(fb) <= 1e-15) return left_state(p, rarefaction_point(p, *fan.rarefaction, fan.param_hi));
    if (fa * fb > 0.0) {
        // Speed at an endpoint only; pick the nearer end.
        const double z = std::abs(fa) < std::abs(fb) ? fan.param_lo : fan.param_hi;
        return left_state(p, rarefaction_point(p, *fan.rarefaction, z));
    }
    const double z = solve_bracket(f, fan.param_lo, fan.param_hi, fa, fb);
    return left_state(p, rarefaction_point(p, *fan.rarefaction, z));
}

}  // namespace wm
