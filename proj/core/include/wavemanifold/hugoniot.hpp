#pragma once

#include <vector>

#include "wavemanifold/manifold.hpp"

namespace wm {

enum class Branch { hugoniot, hugoniot_prime };

// Cached rational parametrization of the Hugoniot curve (fixed left state) or
// Hugoniot' curve (fixed right state) through a base point, with z as the
// curve parameter:
//   Y(z)   = (A z^2 + B z + C) / (vartheta0 [(b1-1) z^2 + 1])
//   tau(z) = (D z^3 + E z^2 + F z + G) / (2 c vartheta0 [(b1-1) z^4 + b1 z^2 + 1])
// A Hugoniot' curve is the reflection of the Hugoniot curve of the reflected
// base, so its coefficients are those of reflect(base) and evaluation
// reflects the result.
struct HugoniotCoeffs {
    ManifoldPoint base;
    Branch branch = Branch::hugoniot;
    double A = 0, B = 0, C = 0;
    double D = 0, E = 0, F = 0, G = 0;
    double vartheta0 = 1;
    // Numerator coefficients of sigma along the curve.
    double sp3 = 0, sp2 = 0, sp1 = 0, sp0 = 0;
    double b1 = 8, c = 1, sigma0 = 0;

    // B^2 - 4AC: sign decides how many times the curve meets Y = 0.
    double c_discriminant() const { return B * B - 4.0 * A * C; }
};

HugoniotCoeffs hugoniot_coeffs(const ModelParams& p, const ManifoldPoint& base,
                               Branch branch = Branch::hugoniot);
inline HugoniotCoeffs hugoniot_prime_coeffs(const ModelParams& p, const ManifoldPoint& base) {
    return hugoniot_coeffs(p, base, Branch::hugoniot_prime);
}

// Point of the curve described by h at parameter z.
ManifoldPoint hugoniot_at(const HugoniotCoeffs& h, double z);
ManifoldPoint hugoniot_prime_at(const ModelParams& p, const ManifoldPoint& base, double z);

// Independent evaluation: solve the 2x2 linear system "left (or right) state
// at (z, tau, Y) equals the base state" for (tau, Y). Used to cross-check the
// closed-form coefficients.
ManifoldPoint hugoniot_reference_at(const ModelParams& p, const ManifoldPoint& base, double z,
                                    Branch branch = Branch::hugoniot);

struct CIntersection {
    ManifoldPoint point;
    Family family;
};

// Points where the curve meets the characteristic plane: none (inside SCC),
// one (tangency at the coincidence curve) or two (slow first, then fast).
std::vector<CIntersection> intersections_with_C(const HugoniotCoeffs& h);

double sigma_along_hugoniot(const HugoniotCoeffs& h, double z);
double dsigma_dz_along_hugoniot(const HugoniotCoeffs& h, double z);
// Real z where sigma is critical along the curve, sorted ascending. These are
// the crossings with Son (Hugoniot) or Son' (Hugoniot').
std::vector<double> sigma_critical_points(const HugoniotCoeffs& h);

// True when the Hugoniot curve through q misses C, i.e. q lies inside SCC.
bool inside_scc(const ModelParams& p, const ManifoldPoint& q);

}  // namespace wm
