#pragma once

#include <vector>

#include "wavemanifold/riemann.hpp"

namespace wm {

struct GridSpec {
    double x_lo = -1.0;
    double x_hi = 1.0;
    int cells = 4000;
    double t_end = 0.1;
    double cfl = 0.45;

    void validate() const;  // throws ConfigError
    double dx() const { return (x_hi - x_lo) / cells; }
};

struct FvProfile {
    GridSpec grid;
    double t = 0.0;
    int steps = 0;
    std::vector<double> x;  // cell centres
    std::vector<State> w;   // cell averages at time t
    State mass_initial;
    State mass_final;
    State boundary_outflow;  // time-integrated flux leaving through both ends
    std::vector<int> elliptic_cells;  // cells with negative discriminant at time t
    int elliptic_events = 0;          // cell-steps that passed through ellipticity

    // Relative mismatch of the discrete balance mass_final = mass_initial - outflow.
    double conservation_error() const;
};

// First-order finite volumes with the local Lax-Friedrichs flux and
// transmissive ends. max_speed bounds the wave speeds of the exact solution
// (used only for the domain check); 0 falls back to the spectral radii of the
// data. Throws WaveLeftDomain if waves could reach the ends by t_end.
FvProfile simulate(const ModelParams& p, const State& w_left, const State& w_right, const GridSpec& grid,
                   double max_speed = 0.0);

// Grid on [-1, 1] with t_end chosen so the fastest wave reaches 80% of the
// half-width.
GridSpec default_grid(const RiemannSolution& sol, int cells = 4000);

struct WaveLocation {
    double sigma = 0.0;
    double expected_x = 0.0;
    double numeric_x = 0.0;
};

struct ProfileComparison {
    double l1_u = 0.0;
    double l1_v = 0.0;
    double l1 = 0.0;
    double scale = 0.0;  // |W_R - W_L| times the spatial span of the wave pattern
    std::vector<WaveLocation> shocks;
};

ProfileComparison compare_profiles(const RiemannSolution& sol, const FvProfile& profile);

}  // namespace wm
