#pragma once

#include <vector>

#include "wavemanifold/surfaces.hpp"

namespace wm {

enum class Termination {
    none,
    hit_coincidence,
    hit_inflection,
    hit_double_sonic,
    hit_hugoniot_of_origin,
    hit_son_f,
    truncated_at_zmax,
    step_failure,
};
const char* to_string(Termination t);

struct ArcSample {
    double param = 0.0;
    ManifoldPoint point;
    double sigma = 0.0;
};

// Samples of an integral curve in order of traversal. For rarefactions the
// parameter is z; for composites it is the z of the rarefaction point the
// sample maps to under the sonic map.
struct OdeArc {
    Family family = Family::slow;
    bool sigma_increasing = true;
    Termination termination = Termination::none;
    std::vector<ArcSample> samples;

    const ArcSample& front() const { return samples.front(); }
    const ArcSample& back() const { return samples.back(); }
};

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double max_step = 0.01;
    double z_max = kDefaultZMax;
};

double rarefaction_rhs(const ModelParams& p, double z, double tau);
double dsigma_dz_on_C(const ModelParams& p, double z, double tau);
// Positive multiple of dsigma/dz on C, free of the z = 0 pole of tau_infl.
double inflection_indicator(const ModelParams& p, double z, double tau);

OdeArc integrate_rarefaction(const ModelParams& p, const ManifoldPoint& start, Family family,
                             const OdeOptions& opt = {});
// Point of a rarefaction arc at an arbitrary z inside its range, integrated
// tightly from the nearest stored sample.
ManifoldPoint rarefaction_point(const ModelParams& p, const OdeArc& arc, double z);

double son_prime_tau(const ModelParams& p, double z, double y);
double sigma_son_prime(const ModelParams& p, double z, double y);

// The point of C sharing the left state and the speed of the Son' point
// (z0, son_prime_tau(z0, y0), y0).
ManifoldPoint sonic_map_T(const ModelParams& p, double z0, double y0);

enum class SonPrimeLabel { slow, fast, boundary };
const char* to_string(SonPrimeLabel l);
SonPrimeLabel classify_son_prime(const ModelParams& p, double z, double y, double tol = 1e-9);

// Slope dY/dz of composite curves in the (z, Y) projection of Son'.
double composite_rhs(const ModelParams& p, double z, double y);

// Roots z of the quadratic whose solutions are the Son' points U with
// T(U) = R, for R = (zr, taur, 0) on C. Empty when they are complex.
std::vector<double> composite_roots(const ModelParams& p, double zr, double taur);
double composite_discriminant(const ModelParams& p, double zr, double taur);

// Composite arc generated by a rarefaction arc ending on the inflection
// locus. The arc starts at the rarefaction's end point and its sonic-map
// image retraces the rarefaction back toward the rarefaction's origin.
// Slow composites live on Son' (Hugoniot side); fast ones are their
// reflections on Son.
OdeArc integrate_composite(const ModelParams& p, const OdeArc& rarefaction,
                           const OdeOptions& opt = {});
OdeArc integrate_composite(const ModelParams& p, const ManifoldPoint& origin, Family family,
                           const OdeOptions& opt = {});

// Composite point at rarefaction parameter r, continuing the root branch
// nearest to z_hint.
ManifoldPoint composite_point(const ModelParams& p, const OdeArc& rarefaction, Family family,
                              double r, double z_hint);

}  // namespace wm
