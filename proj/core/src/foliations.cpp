#include "wavemanifold/foliations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/numeric/odeint.hpp>

namespace wm {

namespace odeint = boost::numeric::odeint;

const char* to_string(Termination t) {
    switch (t) {
        case Termination::none: return "none";
        case Termination::hit_coincidence: return "hit_coincidence";
        case Termination::hit_inflection: return "hit_inflection";
        case Termination::hit_double_sonic: return "hit_double_sonic";
        case Termination::hit_hugoniot_of_origin: return "hit_hugoniot_of_origin";
        case Termination::hit_son_f: return "hit_son_f";
        case Termination::truncated_at_zmax: return "truncated_at_zmax";
        case Termination::step_failure: return "step_failure";
    }
    return "?";
}

const char* to_string(SonPrimeLabel l) {
    switch (l) {
        case SonPrimeLabel::slow: return "slow";
        case SonPrimeLabel::fast: return "fast";
        case SonPrimeLabel::boundary: return "boundary";
    }
    return "?";
}

double rarefaction_rhs(const ModelParams& p, double z, double tau) {
    const double zz = z * z + 1.0;
    return -(p.b1 - 2.0) * z / ((p.b1 - 1.0) * z * z + 1.0) * tau + 2.0 / (zz * zz);
}

double inflection_indicator(const ModelParams& p, double z, double tau) {
    const double z2 = z * z;
    return z * ((p.b1 + 1.0) * z2 + 3.0) * (z2 + 1.0) * tau + ((p.b1 - 1.0) * z2 + 1.0);
}

double dsigma_dz_on_C(const ModelParams& p, double z, double tau) {
    const double z2 = z * z;
    return p.c() * inflection_indicator(p, z, tau) / (((p.b1 - 1.0) * z2 + 1.0) * (z2 + 1.0));
}

namespace {

using Vec1 = std::array<double, 1>;

// Locate a sign change of f on [a, b] (f(a), f(b) of opposite sign) by
// bisection down to tol in the parameter.
double bisect(const std::function<double(double)>& f, double a, double b, double fa, double tol) {
    for (int i = 0; i < 200 && std::abs(b - a) > tol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

OdeArc integrate_rarefaction(const ModelParams& p, const ManifoldPoint& start, Family family,
                             const OdeOptions& opt) {
    if (start.tau == 0.0) throw StartOnBoundary("rarefaction start lies on the coincidence curve");
    const double g0 = inflection_indicator(p, start.z, start.tau);

    OdeArc arc;
    arc.family = family;
    arc.sigma_increasing = family == Family::slow;
    const ManifoldPoint s0{start.z, start.tau, 0.0};
    arc.samples.push_back({start.z, s0, sigma(p, s0)});

    const double gscale = std::max(1.0, std::abs(start.tau) * std::pow(std::abs(start.z) + 1.0, 5));
    if (std::abs(g0) <= 1e-12 * gscale) {
        // Tangent to the inflection locus: sigma cannot move in either
        // direction, so the arc degenerates to its start point.
        arc.termination = Termination::hit_inflection;
        return arc;
    }
    // Direction of z in which sigma increases is sign(g0).
    const double dir = (family == Family::slow ? 1.0 : -1.0) * (g0 > 0.0 ? 1.0 : -1.0);

    auto rhs = [&p](const Vec1& x, Vec1& dx, double z) { dx[0] = rarefaction_rhs(p, z, x[0]); };
    auto stepper = odeint::make_dense_output(opt.abs_tol, opt.rel_tol,
                                             odeint::runge_kutta_dopri5<Vec1>());
    stepper.initialize(Vec1{start.tau}, start.z, dir * 1e-3);

    const double h = opt.max_step;
    const double tau_sign = start.tau < 0.0 ? -1.0 : 1.0;
    const double g_sign = g0 > 0.0 ? 1.0 : -1.0;
    double last = start.z;

    auto tau_at = [&](double z) {
        Vec1 x;
        stepper.calc_state(z, x);
        return x[0];
    };

    for (int n = 0; n < 2000000; ++n) {
        stepper.do_step(rhs);
        const double t_new = stepper.current_time();
        // Walk the freshly covered interval in sample increments.
        while ((t_new - last) * dir > 0.0) {
            double znext = last + dir * h;
            if ((znext - t_new) * dir > 0.0) znext = t_new;
            const double tau_next = tau_at(znext);
            const double g_next = inflection_indicator(p, znext, tau_next);

            Termination hit = Termination::none;
            std::function<double(double)> ev;
            double fa = 0.0;
            if (tau_next * tau_sign <= 0.0) {
                hit = Termination::hit_coincidence;
                ev = [&](double z) { return tau_at(z); };
            } else if (g_next * g_sign <= 0.0) {
                hit = Termination::hit_inflection;
                ev = [&](double z) { return inflection_indicator(p, z, tau_at(z)); };
            } else if (std::abs(znext) >= opt.z_max) {
                hit = Termination::truncated_at_zmax;
                ev = [&](double z) { return std::abs(z) - opt.z_max; };
            }
            if (hit != Termination::none) {
                fa = ev(last);
                const double zs = bisect(ev, last, znext, fa, 1e-12);
                double ts = tau_at(zs);
                if (hit == Termination::hit_coincidence) ts = 0.0;
                const ManifoldPoint q{zs, ts, 0.0};
                arc.samples.push_back({zs, q, sigma(p, q)});
                arc.termination = hit;
                return arc;
            }
            const ManifoldPoint q{znext, tau_next, 0.0};
            arc.samples.push_back({znext, q, sigma(p, q)});
            last = znext;
        }
    }
    arc.termination = Termination::step_failure;
    return arc;
}

ManifoldPoint rarefaction_point(const ModelParams& p, const OdeArc& arc, double z) {
    if (arc.samples.empty()) throw OutOfRange("empty rarefaction arc");
    const double za = arc.front().param;
    const double zb = arc.back().param;
    const double lo = std::min(za, zb);
    const double hi = std::max(za, zb);
    const double slack = 1e-12 * std::max(1.0, std::abs(hi));
    if (z < lo - slack || z > hi + slack) throw OutOfRange("z outside the rarefaction arc");
    // Samples are monotone in z; find the closest by binary search.
    const bool inc = zb >= za;
    auto it = std::lower_bound(arc.samples.begin(), arc.samples.end(), z,
                               [inc](const ArcSample& s, double v) { return inc ? s.param < v : s.param > v; });
    if (it == arc.samples.end()) --it;
    if (it != arc.samples.begin()) {
        auto prev = std::prev(it);
        if (std::abs(prev->param - z) < std::abs(it->param - z)) it = prev;
    }
    if (it->param == z) return it->point;
    Vec1 x{it->point.tau};
    auto rhs = [&p](const Vec1& s, Vec1& ds, double zz) { ds[0] = rarefaction_rhs(p, zz, s[0]); };
    odeint::integrate_adaptive(odeint::make_controlled(1e-13, 1e-12, odeint::runge_kutta_dopri5<Vec1>()),
                               rhs, x, it->param, z, (z - it->param));
    return {z, x[0], 0.0};
}

double son_prime_tau(const ModelParams& p, double z, double y) {
    if (z == 0.0) throw ZAxisSingular("Son' is vertical over z = 0");
    const double c = p.c();
    const double z2 = z * z;
    const double tp = p.b1 + 1.0;
    const double tm = p.b1 - 1.0;
    return (y * (z2 + 1.0) * (tp * z2 - 1.0) - 2.0 * c * (tm * z2 + 1.0)) /
           (2.0 * c * z * (z2 + 1.0) * (tp * z2 + 3.0));
}

double sigma_son_prime(const ModelParams& p, double z, double y) {
    if (z == 0.0) throw ZAxisSingular("Son' is vertical over z = 0");
    const double c = p.c();
    const double z2 = z * z;
    const double tp = p.b1 + 1.0;
    const double q = tp * z2 - 1.0;
    return (q * q * y + 6.0 * c * tp * z2 + 2.0 * c) / (2.0 * p.b1 * z * (tp * z2 + 3.0)) + p.sigma0();
}

namespace {

struct SonicMapTerms {
    double A, B, D, E;
};

SonicMapTerms sonic_terms(const ModelParams& p, double z) {
    const double c = p.c();
    const double z2 = z * z;
    const double tp = p.b1 + 1.0;
    const double tm = p.b1 - 1.0;
    return {tp * tp * z2 * z2 + 2.0 * (p.b1 + 3.0) * z2 + 1.0, 2.0 * c * (tm * z2 + 1.0),
            4.0 * c * (tm * z2 + 1.0), 4.0 * c * c * (z2 + 1.0)};
}

}  // namespace

ManifoldPoint sonic_map_T(const ModelParams& p, double z0, double y0) {
    if (z0 == 0.0) throw ZAxisSingular("sonic map undefined over z = 0");
    const double c = p.c();
    const double z2 = z0 * z0;
    const double tp = p.b1 + 1.0;
    const auto t = sonic_terms(p, z0);
    const double den_z = tp * y0 * z2 + y0 + 2.0 * c;
    const double den_t = t.A * y0 * y0 + t.D * y0 + t.E;
    const double w = (tp * z2 + 1.0) * y0 + 2.0 * c;
    const double scale = std::max(1.0, std::abs(y0)) * (tp * z2 + 1.0) * c;
    if (std::abs(den_z) <= 1e-14 * scale || std::abs(den_t) <= 1e-14 * scale * scale)
        throw DoubleSonicDegenerate("sonic map collapses at this Son' point");
    const double zc = -2.0 * (y0 - c) * z0 / den_z;
    const double tc = -(t.A * y0 + t.B) * w * w / (2.0 * c * z0 * (tp * z2 + 3.0) * den_t);
    return {zc, tc, 0.0};
}

SonPrimeLabel classify_son_prime(const ModelParams& p, double z, double y, double tol) {
    if (z == 0.0) throw ZAxisSingular("Son' classification undefined over z = 0");
    const auto t = sonic_terms(p, z);
    const double s = t.A * y + t.B;
    if (std::abs(s) <= tol * std::max(1.0, std::abs(t.A * y) + std::abs(t.B)))
        return SonPrimeLabel::boundary;
    return z * s > 0.0 ? SonPrimeLabel::slow : SonPrimeLabel::fast;
}

double composite_rhs(const ModelParams& p, double z, double y) {
    if (z == 0.0) throw SingularPoint("composite field is singular on z = 0");
    const double b1 = p.b1;
    const double c = p.c();
    const double tp = b1 + 1.0;
    const double tm = b1 - 1.0;
    const double z2 = z * z;
    const double z4 = z2 * z2;
    const double z6 = z4 * z2;
    const double z8 = z4 * z4;
    const double q = (tp * z2 - 1.0) * (tm * z2 + 1.0);
    const double mu0 = -12.0 * c * c * q;
    const double mu1 = 4.0 * c * (tp * tp * z6 + tp * (5.0 * b1 - 7.0) * z4 + 3.0 * (z2 + 1.0));
    const double mu2 = -tp * tp * tp * tp * z8 - 4.0 * (2.0 * b1 + 3.0) * tp * tp * z6 -
                       2.0 * tp * (13.0 * b1 + 1.0) * z4 + 12.0 * z2 + 3.0;
    const double nu0 = 2.0 * c * q;
    const double nu1 = -(tp * tp * tp * z6 + tp * (7.0 * b1 - 1.0) * z4 + (7.0 * b1 - 1.0) * z2 + 1.0);
    const double den = z * (tp * z2 + 3.0) * (nu1 * y + nu0);
    const double num = (mu2 * y + mu1) * y + mu0;
    if (den == 0.0 || !std::isfinite(num / den))
        throw SingularPoint("composite field is singular here");
    return -num / den;
}

double composite_discriminant(const ModelParams& p, double zr, double taur) {
    const double th = zr * zr + 1.0;
    const double k = taur * zr * th + 1.0;
    const double bq = 2.0 * (taur * th - zr);
    return bq * bq - 4.0 * k * k * (p.b1 + 1.0);
}

std::vector<double> composite_roots(const ModelParams& p, double zr, double taur) {
    // Speed along H(R) minus sigma(R) factors as
    //   (z - zr) (z^2 + 1)^2 [k (b1+1) z^2 + 2 (tau theta - zr) z + k],
    // with theta = zr^2 + 1 and k = tau zr theta + 1. The quadratic factor
    // vanishes exactly at the Son' points of H(R) whose sonic image is R.
    const double th = zr * zr + 1.0;
    const double k = taur * zr * th + 1.0;
    const double a = k * (p.b1 + 1.0);
    const double b = 2.0 * (taur * th - zr);
    double disc = b * b - 4.0 * a * k;
    std::vector<double> out;
    // Within rounding of the fold the two roots are taken as merged.
    if (disc < 0.0 && disc >= -1e-10 * (b * b + std::abs(4.0 * a * k))) disc = 0.0;
    if (disc < 0.0) return out;
    if (a == 0.0) {
        if (b != 0.0) out.push_back(-k / b);
        return out;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
        out.push_back(0.0);
        out.push_back(0.0);
    } else {
        out.push_back(q / a);
        out.push_back(k / q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

ManifoldPoint composite_from_root(const ModelParams& p, const ManifoldPoint& r, Family family,
                                  double z) {
    const auto h = hugoniot_coeffs(p, r);
    const ManifoldPoint u = hugoniot_at(h, z);
    return family == Family::slow ? u : reflect(u);
}

double nearest_root(const std::vector<double>& roots, double hint) {
    double best = roots.front();
    for (double r : roots)
        if (std::abs(r - hint) < std::abs(best - hint)) best = r;
    return best;
}

}  // namespace

ManifoldPoint composite_point(const ModelParams& p, const OdeArc& rarefaction, Family family,
                              double r, double z_hint) {
    const ManifoldPoint base = rarefaction_point(p, rarefaction, r);
    const auto roots = composite_roots(p, base.z, base.tau);
    if (roots.empty()) throw OutOfRange("rarefaction point beyond the double sonic fold");
    return composite_from_root(p, base, family, nearest_root(roots, z_hint));
}

OdeArc integrate_composite(const ModelParams& p, const OdeArc& rarefaction, const OdeOptions& opt) {
    if (rarefaction.termination != Termination::hit_inflection)
        throw StartOnBoundary("composite arcs start where a rarefaction meets the inflection locus");
    const Family family = rarefaction.family;
    OdeArc arc;
    arc.family = family;
    arc.sigma_increasing = !rarefaction.sigma_increasing;

    const double r_end = rarefaction.front().param;  // the rarefaction's origin
    const double r_start = rarefaction.back().param;  // its inflection end
    const ManifoldPoint u2 = rarefaction.back().point;
    arc.samples.push_back({r_start, u2, sigma(p, u2)});
    if (r_start == r_end) {
        // Degenerate rarefaction: the origin itself is on the inflection locus.
        arc.termination = Termination::hit_hugoniot_of_origin;
        return arc;
    }

    const double dir = r_end > r_start ? 1.0 : -1.0;
    const double span = std::abs(r_end - r_start);
    double r = r_start;
    double zu = u2.z;
    double h = std::min(span / 400.0, opt.max_step);
    const double h_min = 1e-13 * std::max(1.0, span);

    struct Eval {
        bool ok;
        double disc;
        double zroot;
        ManifoldPoint base;
    };
    auto eval = [&](double rr, double hint) {
        const ManifoldPoint base = rarefaction_point(p, rarefaction, rr);
        const double d = composite_discriminant(p, base.z, base.tau);
        const auto roots = composite_roots(p, base.z, base.tau);
        if (roots.empty()) return Eval{false, d, hint, base};
        return Eval{true, d, nearest_root(roots, hint), base};
    };

    for (int n = 0; n < 1000000; ++n) {
        double rn = r + dir * h;
        const bool last_step = (rn - r_end) * dir >= 0.0;
        if (last_step) rn = r_end;
        const Eval e = eval(rn, zu);

        if (!e.ok) {
            // The two sonic preimages merged: the composite has reached the
            // double sonic locus. Bisect on the discriminant.
            auto f = [&](double rr) { return eval(rr, zu).disc; };
            const double rs = bisect(f, r, rn, f(r), 1e-13 * std::max(1.0, std::abs(rn)));
            const ManifoldPoint base = rarefaction_point(p, rarefaction, rs);
            const double a = (base.tau * base.z * (base.z * base.z + 1.0) + 1.0) * (p.b1 + 1.0);
            const double b = 2.0 * (base.tau * (base.z * base.z + 1.0) - base.z);
            const double zd = -b / (2.0 * a);
            const ManifoldPoint q = composite_from_root(p, base, family, zd);
            arc.samples.push_back({rs, q, sigma(p, q)});
            arc.termination = Termination::hit_double_sonic;
            return arc;
        }
        const double jump = std::abs(e.zroot - zu);
        if (jump > 0.02 * std::max(1.0, std::abs(zu)) && h > h_min) {
            h *= 0.5;
            continue;
        }
        if (std::abs(e.zroot) >= opt.z_max) {
            auto f = [&](double rr) { return std::abs(eval(rr, zu).zroot) - opt.z_max; };
            const double rs = bisect(f, r, rn, f(r), 1e-12 * std::max(1.0, std::abs(rn)));
            const Eval es = eval(rs, zu);
            const ManifoldPoint q = composite_from_root(p, es.base, family, es.zroot);
            arc.samples.push_back({rs, q, sigma(p, q)});
            arc.termination = Termination::truncated_at_zmax;
            return arc;
        }
        const ManifoldPoint q = composite_from_root(p, e.base, family, e.zroot);
        arc.samples.push_back({rn, q, sigma(p, q)});
        r = rn;
        zu = e.zroot;
        if (last_step) {
            // The sonic image returned to the wave-curve origin, so the
            // composite now sits on the Hugoniot curve of the origin.
            arc.termination = Termination::hit_hugoniot_of_origin;
            return arc;
        }
        if (jump < 0.005 * std::max(1.0, std::abs(zu))) h = std::min(h * 1.5, opt.max_step);
    }
    arc.termination = Termination::step_failure;
    return arc;
}

OdeArc integrate_composite(const ModelParams& p, const ManifoldPoint& origin, Family family,
                           const OdeOptions& opt) {
    const OdeArc raref = integrate_rarefaction(p, origin, family, opt);
    return integrate_composite(p, raref, opt);
}

}  // namespace wm
