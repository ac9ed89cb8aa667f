#pragma once

#include <array>
#include <string>
#include <vector>

#include "wavemanifold/hugoniot.hpp"

namespace wm {

struct SonResiduals {
    double son = 0.0;
    double son_prime = 0.0;
};

// Residuals whose zero sets are Son (critical speed along Hugoniot curves)
// and Son' (critical speed along Hugoniot' curves).
SonResiduals son_residuals(const ModelParams& p, const ManifoldPoint& q);

// tau of the inflection locus C n Son over z != 0.
double inflection_tau(const ModelParams& p, double z);

// |z| of the two double sonic lines (b1+1) z^2 = 1; the lines are
// z = +-value, tau = inflection_tau(z), Y free.
double double_sonic_z(const ModelParams& p);
std::array<ManifoldPoint, 2> double_sonic_points(const ModelParams& p, double y);

// Surface swept by Hugoniot curves of coincidence points (z0, 0, 0).
ManifoldPoint scc_point(const ModelParams& p, double z0, double z);
// Curve along which SCC touches Son'; it separates Son'_s from Son'_f.
ManifoldPoint ecc_prime_point(const ModelParams& p, double z);
// The coincidence point whose Hugoniot curve carries ecc_prime_point(z).
double ecc_prime_base_z(const ModelParams& p, double z);

struct RegionLabel {
    int id = 0;               // 1..12
    char sub = '\0';          // 's' or 'f' for regions 10 and 11, else '\0'
    bool inside_scc = false;
    bool inside_scc_prime = false;
    bool lax_slow = false;
    bool lax_fast = false;

    std::string name() const;
};

// Sign-vector classification of a point off every boundary surface.
RegionLabel region_classify(const ModelParams& p, const ManifoldPoint& q, double tol = 1e-9);

enum class CsRegion { I, II, III };
const char* to_string(CsRegion r);

// Subdivision of C_s by the slow inflection locus and the separatrix
// rarefaction through (z_crit1, tau_1).
CsRegion cs_region(const ModelParams& p, double z, double tau);
// z_crit1 = 1/sqrt(b1+1) and tau_1 = tau_infl(z_crit1).
std::pair<double, double> crit1_point(const ModelParams& p);

enum class SurfaceId { C, Son, SonPrime, SCC, ECCPrime, Inflection, DoubleSonic };
SurfaceId surface_from_string(const std::string& s);
const char* to_string(SurfaceId s);

struct Box {
    double z_lo = -3, z_hi = 3;
    double tau_lo = -6, tau_hi = 6;
    double y_lo = -6, y_hi = 6;
};

struct Mesh {
    std::vector<ManifoldPoint> vertices;
    std::vector<std::array<int, 3>> triangles;  // empty for curves
};

Mesh export_surface_mesh(const ModelParams& p, SurfaceId id, const Box& box, int resolution);

}  // namespace wm
