#include "wavemanifold/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <boost/numeric/odeint.hpp>

#include "wavemanifold/foliations.hpp"

namespace wm {

SonResiduals son_residuals(const ModelParams& p, const ManifoldPoint& q) {
    const double c = p.c();
    const double z2 = q.z * q.z;
    const double base = c * q.z * ((p.b1 + 1.0) * z2 + 3.0) * q.tau +
                        c * ((p.b1 - 1.0) * z2 + 1.0) / (z2 + 1.0);
    const double ycoef = 0.5 * ((p.b1 + 1.0) * z2 - 1.0);
    return {base + ycoef * q.y, base - ycoef * q.y};
}

double inflection_tau(const ModelParams& p, double z) {
    if (z == 0.0) throw ZAxisSingular("inflection locus has a pole at z = 0");
    const double z2 = z * z;
    return -((p.b1 - 1.0) * z2 + 1.0) / (z * (z2 + 1.0) * ((p.b1 + 1.0) * z2 + 3.0));
}

double double_sonic_z(const ModelParams& p) { return 1.0 / std::sqrt(p.b1 + 1.0); }

std::array<ManifoldPoint, 2> double_sonic_points(const ModelParams& p, double y) {
    const double z = double_sonic_z(p);
    return {ManifoldPoint{-z, inflection_tau(p, -z), y}, ManifoldPoint{z, inflection_tau(p, z), y}};
}

ManifoldPoint scc_point(const ModelParams& p, double z0, double z) {
    return hugoniot_at(hugoniot_coeffs(p, {z0, 0.0, 0.0}), z);
}

namespace {

double ecc_a(const ModelParams& p, double z) {
    const double tp = p.b1 + 1.0;
    const double z2 = z * z;
    return tp * tp * z2 * z2 + 2.0 * (p.b1 + 3.0) * z2 + 1.0;
}

}  // namespace

ManifoldPoint ecc_prime_point(const ModelParams& p, double z) {
    const double z2 = z * z;
    const double m = (p.b1 - 1.0) * z2 + 1.0;
    const double a = ecc_a(p, z);
    return {z, -(p.b1 + 2.0) * z * m / ((z2 + 1.0) * a), -2.0 * p.c() * m / a};
}

double ecc_prime_base_z(const ModelParams& p, double z) {
    if (z == 0.0) throw ZAxisSingular("ECC' has no base point over z = 0");
    return ((p.b1 + 1.0) * z * z + 1.0) / (2.0 * z);
}

std::string RegionLabel::name() const {
    std::string s = std::to_string(id);
    if (sub != '\0') s += sub;
    return s;
}

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Region of a point in the half-space Y > 0 (ids 1, 4, 5, 8, 9, 10).
int upper_region(const ModelParams& p, const ManifoldPoint& q, int s_son, int s_sonp) {
    const double zc = double_sonic_z(p);
    if (q.z == 0.0) return s_son > 0 ? 10 : 9;
    const int sz = sgn(q.z);
    if (s_son != s_sonp) {
        if (q.z < -zc) return 4;
        if (q.z > zc) return 1;
        return 9;
    }
    if (s_son == -sz) return q.z < 0.0 ? 10 : 8;
    return q.z < 0.0 ? 5 : 10;
}

int lower_from_upper(int id) {
    switch (id) {
        case 1: return 2;
        case 4: return 3;
        case 5: return 6;
        case 8: return 7;
        case 9: return 12;
        case 10: return 11;
    }
    return id;
}

// Side test separating the slow and fast parts of Region 11 at the point's
// z: the SCC slice meets Son' at the ECC' point, and the chord from the
// origin of the slice to that point splits what lies outside the ellipse.
bool lower_slow_side(const ModelParams& p, const ManifoldPoint& q) {
    const ManifoldPoint e = ecc_prime_point(p, q.z);
    const double ref_tau = q.z > 0.0 ? 0.5 * inflection_tau(p, q.z) : -1.0;
    auto side = [&](double tau, double y) { return e.tau * y - e.y * tau; };
    return sgn(side(q.tau, q.y)) == sgn(side(ref_tau, 0.0));
}

}  // namespace

RegionLabel region_classify(const ModelParams& p, const ManifoldPoint& q, double tol) {
    const SonResiduals r = son_residuals(p, q);
    const double scale = std::max(1.0, std::abs(q.tau) + std::abs(q.y));
    if (std::abs(q.y) <= tol || std::abs(r.son) <= tol * scale || std::abs(r.son_prime) <= tol * scale)
        throw OnBoundary("point lies on C, Son or Son'");

    RegionLabel lab;
    if (q.y > 0.0) {
        lab.id = upper_region(p, q, sgn(r.son), sgn(r.son_prime));
    } else {
        const ManifoldPoint m = reflect(q);
        const SonResiduals rm = son_residuals(p, m);
        lab.id = lower_from_upper(upper_region(p, m, sgn(rm.son), sgn(rm.son_prime)));
    }
    lab.inside_scc = inside_scc(p, q);
    lab.inside_scc_prime = inside_scc(p, reflect(q));
    if (lab.id == 11 && !lab.inside_scc) lab.sub = lower_slow_side(p, q) ? 's' : 'f';
    if (lab.id == 10 && !lab.inside_scc_prime) lab.sub = lower_slow_side(p, reflect(q)) ? 's' : 'f';
    lab.lax_slow = lab.id == 8 || (lab.id == 11 && lab.sub == 's');
    lab.lax_fast = lab.id == 6 || (lab.id == 10 && lab.sub == 'f');
    return lab;
}

const char* to_string(CsRegion r) {
    switch (r) {
        case CsRegion::I: return "I";
        case CsRegion::II: return "II";
        case CsRegion::III: return "III";
    }
    return "?";
}

std::pair<double, double> crit1_point(const ModelParams& p) {
    const double z = double_sonic_z(p);
    return {z, inflection_tau(p, z)};
}

namespace {

// The rarefaction through (z_crit1, tau_1) followed toward z -> -infinity,
// stored on a uniform z grid and interpolated with cubic Hermite pieces
// using the ODE slope. Depends on b1 only.
class Separatrix {
public:
    Separatrix(const ModelParams& p, double z_min) : p_(p), z_hi_(double_sonic_z(p)), z_lo_(z_min) {
        namespace odeint = boost::numeric::odeint;
        using Vec1 = std::array<double, 1>;
        const int n = static_cast<int>(std::ceil((z_hi_ - z_lo_) / kStep));
        h_ = (z_hi_ - z_lo_) / n;
        tau_.resize(n + 1);
        Vec1 x{inflection_tau(p, z_hi_)};
        tau_[n] = x[0];
        auto rhs = [this](const Vec1& s, Vec1& ds, double z) { ds[0] = rarefaction_rhs(p_, z, s[0]); };
        auto stepper = odeint::make_controlled(1e-13, 1e-12, odeint::runge_kutta_dopri5<Vec1>());
        for (int i = n; i > 0; --i) {
            const double za = z_lo_ + i * h_;
            const double zb = z_lo_ + (i - 1) * h_;
            odeint::integrate_adaptive(stepper, rhs, x, za, zb, -h_);
            tau_[i - 1] = x[0];
        }
    }

    double z_lo() const { return z_lo_; }
    double z_hi() const { return z_hi_; }

    double operator()(double z) const {
        z = std::clamp(z, z_lo_, z_hi_);
        const int n = static_cast<int>(tau_.size()) - 1;
        int i = std::min(n - 1, static_cast<int>((z - z_lo_) / h_));
        const double za = z_lo_ + i * h_;
        const double t = (z - za) / h_;
        const double y0 = tau_[i];
        const double y1 = tau_[i + 1];
        const double d0 = rarefaction_rhs(p_, za, y0) * h_;
        const double d1 = rarefaction_rhs(p_, za + h_, y1) * h_;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 + (-2 * t3 + 3 * t2) * y1 +
               (t3 - t2) * d1;
    }

private:
    static constexpr double kStep = 0.005;
    ModelParams p_;
    double z_hi_, z_lo_, h_ = kStep;
    std::vector<double> tau_;
};

const Separatrix& separatrix_for(const ModelParams& p) {
    static std::mutex mu;
    static std::map<double, std::unique_ptr<Separatrix>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[p.b1];
    if (!slot) slot = std::make_unique<Separatrix>(p, -kDefaultZMax);
    return *slot;
}

}  // namespace

CsRegion cs_region(const ModelParams& p, double z, double tau) {
    if (!(tau < 0.0)) throw NotInCs("point is not in the slow characteristic plane");
    if (z > 0.0 && tau < inflection_tau(p, z)) return CsRegion::III;
    const Separatrix& sep = separatrix_for(p);
    if (z < sep.z_hi() && tau < sep(z)) return CsRegion::II;
    return CsRegion::I;
}

namespace {

const std::pair<const char*, SurfaceId> kSurfaceNames[] = {
    {"C", SurfaceId::C},
    {"Son", SurfaceId::Son},
    {"Son'", SurfaceId::SonPrime},
    {"SCC", SurfaceId::SCC},
    {"ECCprime", SurfaceId::ECCPrime},
    {"inflection", SurfaceId::Inflection},
    {"double-sonic", SurfaceId::DoubleSonic},
};

}  // namespace

SurfaceId surface_from_string(const std::string& s) {
    for (const auto& [name, id] : kSurfaceNames)
        if (s == name) return id;
    if (s == "SonPrime" || s == "Sonprime") return SurfaceId::SonPrime;
    throw ConfigError("unknown surface '" + s + "'");
}

const char* to_string(SurfaceId s) {
    for (const auto& [name, id] : kSurfaceNames)
        if (id == s) return name;
    return "?";
}

namespace {

bool in_box(const Box& b, const ManifoldPoint& q) {
    return std::isfinite(q.tau) && std::isfinite(q.y) && q.z >= b.z_lo && q.z <= b.z_hi &&
           q.tau >= b.tau_lo && q.tau <= b.tau_hi && q.y >= b.y_lo && q.y <= b.y_hi;
}

// Triangulate a parametric patch sampled on an (n+1) x (n+1) grid. Cells with
// any vertex outside the box (or undefined) are dropped.
template <class F>
Mesh grid_patch(const Box& box, int n, double s_lo, double s_hi, double t_lo, double t_hi, F&& f) {
    Mesh m;
    std::vector<int> index((n + 1) * (n + 1), -1);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= n; ++j) {
            const double s = s_lo + (s_hi - s_lo) * i / n;
            const double t = t_lo + (t_hi - t_lo) * j / n;
            ManifoldPoint q;
            if (!f(s, t, q) || !in_box(box, q)) continue;
            index[i * (n + 1) + j] = static_cast<int>(m.vertices.size());
            m.vertices.push_back(q);
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int a = index[i * (n + 1) + j];
            const int b = index[(i + 1) * (n + 1) + j];
            const int c = index[(i + 1) * (n + 1) + j + 1];
            const int d = index[i * (n + 1) + j + 1];
            if (a < 0 || b < 0 || c < 0 || d < 0) continue;
            m.triangles.push_back({a, b, c});
            m.triangles.push_back({a, c, d});
        }
    }
    return m;
}

template <class F>
void push_curve(Mesh& m, const Box& box, int n, double s_lo, double s_hi, F&& f) {
    for (int i = 0; i <= n; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / n;
        ManifoldPoint q;
        if (f(s, q) && in_box(box, q)) m.vertices.push_back(q);
    }
}

}  // namespace

Mesh export_surface_mesh(const ModelParams& p, SurfaceId id, const Box& box, int resolution) {
    if (resolution < 2 || !(box.z_lo < box.z_hi) || !(box.tau_lo < box.tau_hi) || !(box.y_lo < box.y_hi))
        throw EmptyRange("empty export box or resolution below 2");
    const int n = resolution;
    Mesh m;
    switch (id) {
        case SurfaceId::C:
            m = grid_patch(box, n, box.z_lo, box.z_hi, box.tau_lo, box.tau_hi,
                           [](double z, double t, ManifoldPoint& q) {
                               q = {z, t, 0.0};
                               return true;
                           });
            break;
        case SurfaceId::Son:
        case SurfaceId::SonPrime: {
            const double sy = id == SurfaceId::Son ? -1.0 : 1.0;
            m = grid_patch(box, n, box.z_lo, box.z_hi, box.y_lo, box.y_hi,
                           [&](double z, double y, ManifoldPoint& q) {
                               if (std::abs(z) < 1e-9) return false;
                               q = {z, son_prime_tau(p, z, sy * y), y};
                               return true;
                           });
            break;
        }
        case SurfaceId::SCC:
            m = grid_patch(box, n, box.z_lo, box.z_hi, box.z_lo, box.z_hi,
                           [&](double z0, double z, ManifoldPoint& q) {
                               q = scc_point(p, z0, z);
                               return true;
                           });
            break;
        case SurfaceId::ECCPrime:
            push_curve(m, box, n, box.z_lo, box.z_hi, [&](double z, ManifoldPoint& q) {
                q = ecc_prime_point(p, z);
                return true;
            });
            break;
        case SurfaceId::Inflection:
            push_curve(m, box, n, box.z_lo, box.z_hi, [&](double z, ManifoldPoint& q) {
                if (std::abs(z) < 1e-9) return false;
                q = {z, inflection_tau(p, z), 0.0};
                return true;
            });
            break;
        case SurfaceId::DoubleSonic:
            for (double sgn_z : {-1.0, 1.0}) {
                push_curve(m, box, n, box.y_lo, box.y_hi, [&](double y, ManifoldPoint& q) {
                    const double z = sgn_z * double_sonic_z(p);
                    q = {z, inflection_tau(p, z), y};
                    return true;
                });
            }
            break;
    }
    if (m.vertices.empty()) throw EmptyRange("selected object does not meet the export box");
    return m;
}

}  // namespace wm
