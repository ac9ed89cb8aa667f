#pragma once

#include <utility>
#include <vector>

#include "wavemanifold/errors.hpp"
#include "wavemanifold/model.hpp"

namespace wm {

enum class Family { slow, fast };

const char* to_string(Family f);

// A shock wave in the blown-up chart. z is the inverse slope of the jump,
// tau the rule coordinate, y = v - v' the jump in v.
struct ManifoldPoint {
    double z = 0.0;
    double tau = 0.0;
    double y = 0.0;
};

struct StatePair {
    State left;
    State right;
    double sigma = 0.0;
};

// Default truncation radius for |z|; the chart excludes z = infinity.
inline constexpr double kDefaultZMax = 50.0;

std::pair<double, double> chart_to_tilde(const ModelParams& p, double z, double tau);

double sigma(const ModelParams& p, double z, double tau);
inline double sigma(const ModelParams& p, const ManifoldPoint& q) { return sigma(p, q.z, q.tau); }

StatePair to_state_pair(const ModelParams& p, const ManifoldPoint& q);
State left_state(const ModelParams& p, const ManifoldPoint& q);
State right_state(const ModelParams& p, const ManifoldPoint& q);

// Euclidean norm of F(W) - F(W') - sigma (W - W').
double rh_residual(const ModelParams& p, const StatePair& sp);

inline ManifoldPoint reflect(const ManifoldPoint& q) { return {q.z, q.tau, -q.y}; }

// Chart image of (x, u) -> (-x, -u). Exact only when a1 == a4; see
// ModelParams::mirror_symmetric.
inline ManifoldPoint mirror(const ManifoldPoint& q) { return {-q.z, -q.tau, -q.y}; }
// State-space counterpart of mirror (u -> -u, v fixed, about the chart centre).
State mirror_state(const ModelParams& p, const State& w);

// Thrown when the lifting quadratic degenerates: one root sits at z = infinity.
class DegenerateRoot : public Error {
public:
    DegenerateRoot(const std::string& what, ManifoldPoint finite_root)
        : Error(what), finite_root_(finite_root) {}
    const ManifoldPoint& finite_root() const { return finite_root_; }

private:
    ManifoldPoint finite_root_;
};

struct RaisedPoint {
    ManifoldPoint point;
    bool near_infinity = false;  // |z| beyond the z_max guard
};

// Both lifts of a strictly hyperbolic state to the characteristic plane,
// ordered (slow, fast).
std::pair<RaisedPoint, RaisedPoint> raise_state_both(const ModelParams& p, const State& w,
                                                     double z_max = kDefaultZMax);

ManifoldPoint raise_state(const ModelParams& p, const State& w, Family family);

}  // namespace wm
