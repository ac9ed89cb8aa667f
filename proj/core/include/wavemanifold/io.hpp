#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wavemanifold/fv_oracle.hpp"

namespace wm {

// First line (or "format" field) of every file the library writes.
inline constexpr const char* kFormatTag = "wavemanifold-format 1";

struct RunConfig {
    ModelParams params;
    std::string out_dir = ".";
    double z_max = kDefaultZMax;
    double newton_tol = 1e-12;
    double accept_tol = 1e-9;
    int samples_per_arc = 400;
    std::uint64_t seed = 12345;

    void validate() const;  // throws ConfigError / InvalidParams
    SolverOptions solver_options() const;
};

// Reads either a JSON object or key = value lines ('#' starts a comment).
// Recognized keys: b1, a1..a4, out_dir, z_max, newton_tol, accept_tol,
// samples_per_arc, seed. Unknown keys are rejected.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Fixed 12-significant-digit rendering shared by every writer.
std::string fmt(double x);

void write_arc_csv(std::ostream& os, const ModelParams& p, const OdeArc& arc);
void write_wave_arc_csv(std::ostream& os, const ModelParams& p, const WaveArc& arc);
void write_mesh_obj(std::ostream& os, const Mesh& mesh, const std::string& name);
void write_points_csv(std::ostream& os, const std::vector<ManifoldPoint>& pts);
void write_profile_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<State>& ws,
                       const std::string& first_column = "xi");

std::string wave_curve_json(const WaveCurve& curve);
std::string solution_json(const RiemannSolution& sol);
std::string comparison_json(const ProfileComparison& cmp, const FvProfile& fv);
std::string region_json(const ModelParams& p, const ManifoldPoint& q);

}  // namespace wm
