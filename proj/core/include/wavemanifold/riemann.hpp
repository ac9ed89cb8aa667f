#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wavemanifold/wave_curves.hpp"

namespace wm {

// Hugoniot' curves drawn through the points of a slow wave curve. Every point
// on a fiber has the right state of the fiber's base.
struct IntermediateSurface {
    struct Fiber {
        CurvePosition position;
        ManifoldPoint base;
        HugoniotCoeffs coeffs;
        std::vector<ManifoldPoint> points;
    };
    std::shared_ptr<const WaveCurve> curve;
    double z_lo = -3.0;
    double z_hi = 3.0;
    std::vector<Fiber> fibers;

    ManifoldPoint at(const CurvePosition& pos, double z) const;
};

IntermediateSurface build_intermediate_surface(const ModelParams& p, std::shared_ptr<const WaveCurve> curve,
                                               double z_lo, double z_hi, int resolution);

struct Match {
    CurvePosition slow;
    CurvePosition fast;
    ManifoldPoint u_ms;  // on the slow wave curve
    ManifoldPoint u_mf;  // on the fast wave curve (left state equals w_m)
    State w_m;
    ArcKind slow_kind = ArcKind::shock;
    ArcKind fast_kind = ArcKind::shock;
    double residual = 0.0;            // state-match residual
    double geometric_residual = 0.0;  // distance of reflect(u_mf) from the Hugoniot' of u_ms
    bool speed_ordered = true;        // slow group ends no faster than fast group starts
};

struct RiemannSolution {
    ModelParams params;
    State w_left;
    State w_right;
    ManifoldPoint u_left;
    ManifoldPoint u_right;
    std::shared_ptr<const WaveCurve> slow_curve;
    std::shared_ptr<const WaveCurve> fast_curve;
    std::vector<Match> matches;
    std::size_t primary = 0;
    std::vector<ElementaryWave> waves;  // primary pattern, left to right
    bool speed_ordered = true;
    std::vector<std::string> notes;

    bool trivial() const { return matches.empty(); }
    const Match& primary_match() const { return matches.at(primary); }
    State middle_state() const { return trivial() ? w_left : primary_match().w_m; }
    std::string pattern() const;  // e.g. "shock+rarefaction"
};

struct SolverOptions {
    CurveOptions curve;
    double newton_tol = 1e-12;
    double accept_tol = 1e-9;
};

// All (slow, fast) parameter pairs with right(slow) == left(fast).
std::vector<Match> match_middle(const ModelParams& p, const WaveCurve& slow, const WaveCurve& fast,
                                const SolverOptions& opt = {});

// Independent path: intersect reflect(fast curve) with the intermediate
// surface of the slow curve by 3D Newton from the given match. Returns the
// distance between the two middle states.
double surface_intersection_check(const ModelParams& p, const WaveCurve& slow, const WaveCurve& fast,
                                  const Match& m);

RiemannSolution solve(const ModelParams& p, const State& w_left, const State& w_right,
                      const SolverOptions& opt = {});

// Self-similar profile W(x/t). At a shock speed the left limit is returned.
State evaluate_profile(const RiemannSolution& sol, double xi);

// Smallest and largest wave speeds of the primary pattern.
std::pair<double, double> speed_range(const RiemannSolution& sol);

}  // namespace wm
