#include "wavemanifold/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace wm {

using nlohmann::json;

void RunConfig::validate() const {
    params.validate();
    if (!(z_max > 1.0)) throw ConfigError("z_max must exceed 1");
    if (!(newton_tol > 0.0) || !(accept_tol > 0.0)) throw ConfigError("tolerances must be positive");
    if (samples_per_arc < 2) throw ConfigError("samples_per_arc must be at least 2");
}

SolverOptions RunConfig::solver_options() const {
    SolverOptions o;
    o.curve.z_max = z_max;
    o.curve.samples_per_arc = samples_per_arc;
    o.newton_tol = newton_tol;
    o.accept_tol = accept_tol;
    return o;
}

namespace {

void assign(RunConfig& c, const std::string& key, const std::string& value) {
    auto num = [&]() {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != value.size()) throw ConfigError("bad number for '" + key + "': " + value);
        return v;
    };
    if (key == "b1") c.params.b1 = num();
    else if (key == "a1") c.params.a1 = num();
    else if (key == "a2") c.params.a2 = num();
    else if (key == "a3") c.params.a3 = num();
    else if (key == "a4") c.params.a4 = num();
    else if (key == "z_max") c.z_max = num();
    else if (key == "newton_tol") c.newton_tol = num();
    else if (key == "accept_tol") c.accept_tol = num();
    else if (key == "samples_per_arc") c.samples_per_arc = static_cast<int>(num());
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(num());
    else if (key == "out_dir") c.out_dir = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '{') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::parse_error& e) {
            throw ConfigError(std::string("invalid JSON config: ") + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_string()) assign(c, it.key(), it.value().get<std::string>());
            else if (it.value().is_number()) assign(c, it.key(), fmt(it.value().get<double>()));
            else throw ConfigError("config value for '" + it.key() + "' must be a number or string");
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
            assign(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

// JSON numbers are rounded to 12 significant digits for byte-stable output.
double r12(double x) { return std::isfinite(x) ? std::stod(fmt(x)) : x; }

json point_json(const ManifoldPoint& q) { return json::array({r12(q.z), r12(q.tau), r12(q.y)}); }
json state_json(const State& w) { return json::array({r12(w.u), r12(w.v)}); }

json arc_json(const ModelParams& p, const WaveArc& a) {
    json samples = json::array();
    for (const auto& s : a.samples) {
        const StatePair sp = to_state_pair(p, s.point);
        samples.push_back({r12(s.param), r12(s.point.z), r12(s.point.tau), r12(s.point.y), r12(s.sigma),
                           r12(sp.left.u), r12(sp.left.v), r12(sp.right.u), r12(sp.right.v)});
    }
    return {{"kind", to_string(a.kind)},
            {"family", to_string(a.family)},
            {"sigma_direction", a.sigma_increasing ? "increasing" : "decreasing"},
            {"param_begin", r12(a.param_begin)},
            {"param_end", r12(a.param_end)},
            {"termination", to_string(a.termination)},
            {"columns", {"param", "z", "tau", "Y", "sigma", "u_left", "v_left", "u_right", "v_right"}},
            {"samples", samples}};
}

json curve_json(const WaveCurve& c) {
    json arcs = json::array();
    for (const auto& a : c.arcs) arcs.push_back(arc_json(c.params, a));
    return {{"family", to_string(c.family)},
            {"base", point_json(c.base)},
            {"structure", to_string(c.structure)},
            {"notation", c.structure_string()},
            {"truncated", c.truncated},
            {"arcs", arcs}};
}

json params_json(const ModelParams& p) {
    return {{"b1", r12(p.b1)}, {"a1", r12(p.a1)}, {"a2", r12(p.a2)}, {"a3", r12(p.a3)}, {"a4", r12(p.a4)},
            {"c", r12(p.c())}, {"sigma0", r12(p.sigma0())}};
}

}  // namespace

void write_arc_csv(std::ostream& os, const ModelParams& p, const OdeArc& arc) {
    os << "# " << kFormatTag << " arc family=" << to_string(arc.family)
       << " termination=" << to_string(arc.termination) << "\n";
    os << "param,z,tau,Y,sigma,u_left,v_left,u_right,v_right\n";
    for (const auto& s : arc.samples) {
        const StatePair sp = to_state_pair(p, s.point);
        os << fmt(s.param) << ',' << fmt(s.point.z) << ',' << fmt(s.point.tau) << ',' << fmt(s.point.y) << ','
           << fmt(s.sigma) << ',' << fmt(sp.left.u) << ',' << fmt(sp.left.v) << ',' << fmt(sp.right.u) << ','
           << fmt(sp.right.v) << '\n';
    }
}

void write_wave_arc_csv(std::ostream& os, const ModelParams& p, const WaveArc& arc) {
    OdeArc tmp;
    tmp.family = arc.family;
    tmp.termination = arc.termination;
    tmp.samples = arc.samples;
    write_arc_csv(os, p, tmp);
}

void write_mesh_obj(std::ostream& os, const Mesh& mesh, const std::string& name) {
    os << "# " << kFormatTag << " mesh\n";
    os << "# coordinates: x=z y=tau z=Y\n";
    os << "o " << name << '\n';
    for (const auto& v : mesh.vertices) os << "v " << fmt(v.z) << ' ' << fmt(v.tau) << ' ' << fmt(v.y) << '\n';
    for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    // Curves have no faces; emit a polyline so viewers still draw them.
    if (mesh.triangles.empty() && mesh.vertices.size() > 1) {
        os << 'l';
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) os << ' ' << i + 1;
        os << '\n';
    }
}

void write_points_csv(std::ostream& os, const std::vector<ManifoldPoint>& pts) {
    os << "# " << kFormatTag << " points\n";
    os << "z,tau,Y\n";
    for (const auto& q : pts) os << fmt(q.z) << ',' << fmt(q.tau) << ',' << fmt(q.y) << '\n';
}

void write_profile_csv(std::ostream& os, const std::vector<double>& xs, const std::vector<State>& ws,
                       const std::string& first_column) {
    os << "# " << kFormatTag << " profile\n";
    os << first_column << ",u,v\n";
    for (std::size_t i = 0; i < xs.size() && i < ws.size(); ++i)
        os << fmt(xs[i]) << ',' << fmt(ws[i].u) << ',' << fmt(ws[i].v) << '\n';
}

std::string wave_curve_json(const WaveCurve& curve) {
    json j = curve_json(curve);
    j["format"] = kFormatTag;
    j["params"] = params_json(curve.params);
    return j.dump(1);
}

std::string solution_json(const RiemannSolution& sol) {
    json matches = json::array();
    for (std::size_t k = 0; k < sol.matches.size(); ++k) {
        const Match& m = sol.matches[k];
        matches.push_back({{"primary", k == sol.primary},
                           {"slow_arc", m.slow.arc},
                           {"slow_param", r12(m.slow.param)},
                           {"slow_kind", to_string(m.slow_kind)},
                           {"fast_arc", m.fast.arc},
                           {"fast_param", r12(m.fast.param)},
                           {"fast_kind", to_string(m.fast_kind)},
                           {"U_Ms", point_json(m.u_ms)},
                           {"U_Mf", point_json(m.u_mf)},
                           {"W_M", state_json(m.w_m)},
                           {"residual", m.residual},
                           {"geometric_residual", m.geometric_residual},
                           {"speed_ordered", m.speed_ordered}});
    }
    json waves = json::array();
    for (const auto& w : sol.waves) {
        waves.push_back({{"type", w.kind == ElementaryWave::Kind::fan ? "rarefaction" : "shock"},
                         {"family", to_string(w.family)},
                         {"speed_lo", r12(w.sigma_lo)},
                         {"speed_hi", r12(w.sigma_hi)},
                         {"left", state_json(w.left)},
                         {"right", state_json(w.right)}});
    }
    json j = {{"format", kFormatTag},
              {"params", params_json(sol.params)},
              {"W_L", state_json(sol.w_left)},
              {"W_R", state_json(sol.w_right)},
              {"U_L", point_json(sol.u_left)},
              {"U_R", point_json(sol.u_right)},
              {"pattern", sol.pattern()},
              {"W_M", state_json(sol.middle_state())},
              {"speed_ordered", sol.speed_ordered},
              {"matches", matches},
              {"waves", waves},
              {"notes", sol.notes}};
    if (sol.slow_curve) j["slow_curve"] = curve_json(*sol.slow_curve);
    if (sol.fast_curve) j["fast_curve"] = curve_json(*sol.fast_curve);
    return j.dump(1);
}

std::string comparison_json(const ProfileComparison& cmp, const FvProfile& fv) {
    json shocks = json::array();
    for (const auto& s : cmp.shocks)
        shocks.push_back({{"speed", r12(s.sigma)}, {"expected_x", r12(s.expected_x)}, {"numeric_x", r12(s.numeric_x)}});
    return json{{"format", kFormatTag},
                {"cells", fv.grid.cells},
                {"domain", {r12(fv.grid.x_lo), r12(fv.grid.x_hi)}},
                {"t_end", r12(fv.t)},
                {"cfl", r12(fv.grid.cfl)},
                {"steps", fv.steps},
                {"l1_error", r12(cmp.l1)},
                {"l1_u", r12(cmp.l1_u)},
                {"l1_v", r12(cmp.l1_v)},
                {"error_scale", r12(cmp.scale)},
                {"relative_error", r12(cmp.scale > 0 ? cmp.l1 / cmp.scale : 0.0)},
                {"conservation_error", fv.conservation_error()},
                {"elliptic_cells", fv.elliptic_cells},
                {"elliptic_events", fv.elliptic_events},
                {"shocks", shocks}}
        .dump(1);
}

std::string region_json(const ModelParams& p, const ManifoldPoint& q) {
    json j = {{"format", kFormatTag}, {"point", point_json(q)}};
    const SonResiduals r = son_residuals(p, q);
    j["son"] = r12(r.son);
    j["son_prime"] = r12(r.son_prime);
    try {
        const RegionLabel lab = region_classify(p, q);
        j["region"] = lab.name();
        j["inside_scc"] = lab.inside_scc;
        j["inside_scc_prime"] = lab.inside_scc_prime;
        j["lax_slow"] = lab.lax_slow;
        j["lax_fast"] = lab.lax_fast;
    } catch (const OnBoundary& e) {
        j["region"] = "boundary";
        j["boundary"] = e.what();
        if (q.y == 0.0) j["surface"] = q.tau < 0.0 ? "C_s" : q.tau > 0.0 ? "C_f" : "coincidence curve";
    }
    if (q.z != 0.0 && std::abs(r.son_prime) <= 1e-9 * std::max(1.0, std::abs(q.tau) + std::abs(q.y)))
        j["son_prime_branch"] = to_string(classify_son_prime(p, q.z, q.y));
    return j.dump(1);
}

}  // namespace wm
