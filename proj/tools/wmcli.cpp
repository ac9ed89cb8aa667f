// Command-line front end: solve Riemann problems, export geometry, classify
// points of the wave manifold.
#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wavemanifold/fv_oracle.hpp"
#include "wavemanifold/io.hpp"
#include "wavemanifold/riemann.hpp"

namespace fs = std::filesystem;
using namespace wm;

namespace {

enum ExitCode { kOk = 0, kError = 1, kNoIntersection = 2, kElliptic = 3 };

std::vector<double> parse_tuple(const std::string& s, std::size_t n, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ConfigError(std::string("bad number in ") + what + ": '" + item + "'");
        }
    }
    if (out.size() != n) throw ConfigError(std::string(what) + " needs " + std::to_string(n) + " comma-separated values");
    return out;
}

State parse_state(const std::string& s, const char* what) {
    const auto v = parse_tuple(s, 2, what);
    return {v[0], v[1]};
}

ManifoldPoint parse_point(const std::string& s, std::size_t n, const char* what) {
    const auto v = parse_tuple(s, n, what);
    return {v[0], v[1], n == 3 ? v[2] : 0.0};
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw ConfigError("cannot write " + p.string());
    spdlog::info("writing {}", p.string());
    return os;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("wmcli");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("RM_LOG")) spdlog::set_level(spdlog::level::from_str(lvl));
}

struct Common {
    std::string config;
    std::string out_dir;

    RunConfig load() const {
        RunConfig rc = config.empty() ? RunConfig{} : load_config(config);
        if (!out_dir.empty()) rc.out_dir = out_dir;
        rc.validate();
        fs::create_directories(rc.out_dir);
        return rc;
    }
};

struct SolveArgs {
    std::string wl, wr;
    double profile_at = 0.0;
    int validate = 0;
};

int cmd_solve(const Common& common, const SolveArgs& a) {
    const RunConfig rc = common.load();
    const State wl = parse_state(a.wl, "--wl"), wr = parse_state(a.wr, "--wr");
    const RiemannSolution sol = solve(rc.params, wl, wr, rc.solver_options());
    spdlog::info("pattern {}, {} match(es)", sol.pattern(), sol.matches.size());
    for (const auto& n : sol.notes) spdlog::info("{}", n);
    const fs::path dir = rc.out_dir;
    open_out(dir / "solution.json") << solution_json(sol) << '\n';

    // Profile: sample x/t across the wave pattern with a margin on both sides.
    const auto [lo, hi] = speed_range(sol);
    const double margin = std::max(0.25 * (hi - lo), 0.5);
    const int n = 1001;
    std::vector<double> xs;
    std::vector<State> ws;
    for (int i = 0; i < n; ++i) {
        const double xi = lo - margin + (hi - lo + 2 * margin) * i / (n - 1);
        xs.push_back(a.profile_at > 0.0 ? xi * a.profile_at : xi);
        ws.push_back(evaluate_profile(sol, xi));
    }
    {
        auto os = open_out(dir / "profile.csv");
        write_profile_csv(os, xs, ws, a.profile_at > 0.0 ? "x" : "xi");
    }

    if (a.validate > 0) {
        const GridSpec g = default_grid(sol, a.validate);
        const double smax = std::max(std::abs(lo), std::abs(hi));
        const FvProfile fv = simulate(rc.params, wl, wr, g, smax);
        const ProfileComparison cmp = compare_profiles(sol, fv);
        open_out(dir / "comparison.json") << comparison_json(cmp, fv) << '\n';
        auto os = open_out(dir / "fv_profile.csv");
        write_profile_csv(os, fv.x, fv.w, "x");
        if (!fv.elliptic_cells.empty())
            spdlog::warn("{} elliptic cells in the finite-volume solution", fv.elliptic_cells.size());
        std::cout << "L1 error " << wm::fmt(cmp.l1) << " (relative " << wm::fmt(cmp.scale > 0 ? cmp.l1 / cmp.scale : 0.0)
                  << ")\n";
    }
    std::cout << "pattern " << sol.pattern() << ", middle state (" << wm::fmt(sol.middle_state().u) << ", "
              << wm::fmt(sol.middle_state().v) << ")\n";
    return kOk;
}

struct ExportArgs {
    std::string object;
    std::string base;
    std::string family = "slow";
    std::string box;
    int resolution = 80;
};

int cmd_export(const Common& common, const ExportArgs& a) {
    const RunConfig rc = common.load();
    const fs::path dir = rc.out_dir;
    Box box;
    if (!a.box.empty()) {
        const auto b = parse_tuple(a.box, 6, "--box");
        box = {b[0], b[1], b[2], b[3], b[4], b[5]};
    }
    if (a.object == "wave-curve" || a.object == "intermediate-surface") {
        if (a.base.empty()) throw ConfigError("--base z,tau is required for " + a.object);
        const ManifoldPoint base = parse_point(a.base, 2, "--base");
        if (a.family != "slow" && a.family != "fast") throw ConfigError("--family must be slow or fast");
        const Family f = a.family == "slow" ? Family::slow : Family::fast;
        CurveOptions co = rc.solver_options().curve;
        auto curve = std::make_shared<const WaveCurve>(build_wave_curve(rc.params, base, f, co));
        if (a.object == "wave-curve") {
            open_out(dir / "wave_curve.json") << wave_curve_json(*curve) << '\n';
            for (std::size_t k = 0; k < curve->arcs.size(); ++k) {
                auto os = open_out(dir / ("wave_curve_arc" + std::to_string(k) + ".csv"));
                write_wave_arc_csv(os, rc.params, curve->arcs[k]);
            }
            std::cout << curve->structure_string() << '\n';
            return kOk;
        }
        if (f != Family::slow) throw ConfigError("intermediate surfaces are built from slow wave curves");
        const IntermediateSurface s =
            build_intermediate_surface(rc.params, curve, box.z_lo, box.z_hi, a.resolution);
        std::vector<ManifoldPoint> pts;
        for (const auto& fib : s.fibers)
            for (const auto& q : fib.points)
                if (q.tau >= box.tau_lo && q.tau <= box.tau_hi && q.y >= box.y_lo && q.y <= box.y_hi)
                    pts.push_back(q);
        if (pts.empty()) throw EmptyRange("intermediate surface has no points inside the box");
        auto os = open_out(dir / "intermediate_surface.csv");
        write_points_csv(os, pts);
        std::cout << pts.size() << " points\n";
        return kOk;
    }
    const SurfaceId id = surface_from_string(a.object);
    const Mesh m = export_surface_mesh(rc.params, id, box, a.resolution);
    std::string stem = to_string(id);
    for (char& ch : stem)
        if (ch == '\'') ch = 'p';
    {
        auto os = open_out(dir / (stem + ".obj"));
        write_mesh_obj(os, m, to_string(id));
    }
    auto os = open_out(dir / (stem + ".csv"));
    write_points_csv(os, m.vertices);
    std::cout << m.vertices.size() << " vertices, " << m.triangles.size() << " triangles\n";
    return kOk;
}

int cmd_classify(const Common& common, const std::string& point, bool as_json) {
    RunConfig rc = common.config.empty() ? RunConfig{} : load_config(common.config);
    rc.validate();
    const ManifoldPoint q = parse_point(point, 3, "--point");
    if (as_json) {
        std::cout << region_json(rc.params, q) << '\n';
        return kOk;
    }
    try {
        const RegionLabel lab = region_classify(rc.params, q);
        std::cout << "region " << lab.name();
        if (lab.lax_slow) std::cout << ", lax_slow";
        if (lab.lax_fast) std::cout << ", lax_fast";
        std::cout << '\n';
    } catch (const OnBoundary& e) {
        std::cout << "boundary: " << e.what() << '\n';
    }
    const SonResiduals r = son_residuals(rc.params, q);
    if (q.z != 0.0 && std::abs(r.son_prime) <= 1e-9 * std::max(1.0, std::abs(q.tau) + std::abs(q.y)))
        std::cout << "Son' " << to_string(classify_son_prime(rc.params, q.z, q.y)) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Riemann solutions and geometry of the wave manifold of a quadratic 2x2 system"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--config", common.config, "JSON or key=value configuration file");
    app.add_option("--out", common.out_dir, "output directory (overrides the config)");

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "solve a Riemann problem");
    solve_cmd->add_option("--wl", sa.wl, "left state u,v")->required();
    solve_cmd->add_option("--wr", sa.wr, "right state u,v")->required();
    solve_cmd->add_option("--profile-at", sa.profile_at, "write the profile over x at this time instead of x/t")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--validate", sa.validate, "compare with a finite-volume run on N cells")
        ->check(CLI::Range(16, 1000000));

    ExportArgs ea;
    auto* export_cmd = app.add_subcommand("export", "export surfaces, curves and wave curves");
    export_cmd->add_option("--object", ea.object,
                           "C, Son, Son', SCC, ECCprime, inflection, double-sonic, wave-curve or "
                           "intermediate-surface")
        ->required();
    export_cmd->add_option("--base", ea.base, "base point z,tau on C (wave curves)");
    export_cmd->add_option("--family", ea.family, "slow or fast (wave curves)");
    export_cmd->add_option("--box", ea.box, "z_lo,z_hi,tau_lo,tau_hi,y_lo,y_hi");
    export_cmd->add_option("--resolution", ea.resolution, "grid resolution")->check(CLI::Range(2, 100000));

    std::string point;
    bool as_json = false;
    auto* classify_cmd = app.add_subcommand("classify", "classify a point of the wave manifold");
    classify_cmd->add_option("--point", point, "z,tau,Y")->required();
    classify_cmd->add_flag("--json", as_json, "print the full JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*solve_cmd) return cmd_solve(common, sa);
        if (*export_cmd) return cmd_export(common, ea);
        if (*classify_cmd) return cmd_classify(common, point, as_json);
    } catch (const NoIntersection& e) {
        spdlog::error("{}", e.what());
        return kNoIntersection;
    } catch (const EllipticState& e) {
        spdlog::error("{}", e.what());
        return kElliptic;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kError;
    }
    return kError;
}
