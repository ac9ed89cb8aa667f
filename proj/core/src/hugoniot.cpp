#include "wavemanifold/hugoniot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unsupported/Eigen/Polynomials>

namespace wm {

HugoniotCoeffs hugoniot_coeffs(const ModelParams& p, const ManifoldPoint& base, Branch branch) {
    HugoniotCoeffs h;
    h.base = base;
    h.branch = branch;
    h.b1 = p.b1;
    h.c = p.c();
    h.sigma0 = p.sigma0();

    const ManifoldPoint q = branch == Branch::hugoniot ? base : reflect(base);
    const double z0 = q.z;
    const double t0 = q.tau;
    const double y0 = q.y;
    const double b1 = p.b1;
    const double c = h.c;
    const double th = z0 * z0 + 1.0;
    h.vartheta0 = th;

    const double w = 2.0 * c * t0 * z0 + y0;
    h.A = -(2.0 * c + w * th);
    h.B = 4.0 * c * z0 + 2.0 * c * t0 * (z0 * z0 - 1.0) * th + b1 * y0 * z0 * th;
    h.C = -2.0 * c * z0 * z0 + w * th;
    h.D = 2.0 * c * b1 + (2.0 * c * b1 * t0 * z0 + b1 * y0) * th;
    h.E = -2.0 * c * t0 * (z0 * z0 - 1.0) * th - b1 * z0 * y0 * th - 4.0 * c * z0;
    h.F = (4.0 * c + 2.0 * c * b1 * t0 * z0 + b1 * y0) * th - 2.0 * c * b1 * z0 * z0;
    h.G = h.E;

    const double tp = b1 + 1.0;
    const double k = 2.0 * c * (2.0 * z0 + t0 * z0 * z0 * z0 * z0 - t0);
    h.sp3 = b1 * tp * (y0 * th + 2.0 * c * (1.0 + z0 * t0 * th));
    h.sp2 = tp * (b1 * z0 * y0 * th + k);
    h.sp1 = b1 * (y0 * th + 2.0 * c * (z0 * t0 * th - 2.0 * z0 * z0 - 1.0));
    h.sp0 = b1 * z0 * y0 * th + k;
    return h;
}

ManifoldPoint hugoniot_at(const HugoniotCoeffs& h, double z) {
    const double z2 = z * z;
    const double tm = h.b1 - 1.0;
    const double tau = (((h.D * z + h.E) * z + h.F) * z + h.G) /
                       (2.0 * h.c * h.vartheta0 * ((tm * z2 + h.b1) * z2 + 1.0));
    const double y = ((h.A * z + h.B) * z + h.C) / (h.vartheta0 * (tm * z2 + 1.0));
    ManifoldPoint out{z, tau, y};
    return h.branch == Branch::hugoniot ? out : reflect(out);
}

ManifoldPoint hugoniot_prime_at(const ModelParams& p, const ManifoldPoint& base, double z) {
    return hugoniot_at(hugoniot_prime_coeffs(p, base), z);
}

ManifoldPoint hugoniot_reference_at(const ModelParams& p, const ManifoldPoint& base, double z,
                                    Branch branch) {
    // Left state at (z, tau, Y) is affine in (tau, Y):
    //   u = [U~(z,tau) - a1 + a4]/b1 + z Y/2,   v = V1(z,tau) - a3 + Y/2,
    // with U~ = 2cz/(z^2+1) + c tau (z^2-1) and V1 = c/(z^2+1) + c tau z.
    // For the primed branch the right state is held fixed, flipping the Y terms.
    const double s = branch == Branch::hugoniot ? 1.0 : -1.0;
    const State w0 = branch == Branch::hugoniot ? left_state(p, base) : right_state(p, base);
    const double c = p.c();
    const double zz = z * z + 1.0;
    const double a11 = c * (z * z - 1.0) / p.b1;
    const double a12 = s * 0.5 * z;
    const double r1 = w0.u - (2.0 * c * z / zz - p.a1 + p.a4) / p.b1;
    const double a21 = c * z;
    const double a22 = s * 0.5;
    const double r2 = w0.v - (c / zz - p.a3);
    const double det = a11 * a22 - a12 * a21;
    const double tau = (r1 * a22 - a12 * r2) / det;
    const double y = (a11 * r2 - a21 * r1) / det;
    return {z, tau, y};
}

std::vector<CIntersection> intersections_with_C(const HugoniotCoeffs& h) {
    std::vector<CIntersection> out;
    const double disc = h.c_discriminant();
    const double scale = std::max(1.0, h.B * h.B);
    auto push = [&](double z) {
        ManifoldPoint q = hugoniot_at(h, z);
        q.y = 0.0;
        out.push_back({q, q.tau < 0.0 ? Family::slow : Family::fast});
    };
    if (std::abs(h.A) <= 1e-14 * std::max({1.0, std::abs(h.B), std::abs(h.C)})) {
        // Degree drop: one intersection has escaped to z = infinity.
        if (h.B != 0.0) push(-h.C / h.B);
    } else if (std::abs(disc) <= 1e-12 * scale) {
        push(-h.B / (2.0 * h.A));
    } else if (disc > 0.0) {
        const double q = -0.5 * (h.B + std::copysign(std::sqrt(disc), h.B));
        push(q / h.A);
        push(h.C / q);
    }
    std::sort(out.begin(), out.end(),
              [](const CIntersection& a, const CIntersection& b) { return a.point.tau < b.point.tau; });
    return out;
}

double sigma_along_hugoniot(const HugoniotCoeffs& h, double z) {
    const double num = ((h.sp3 * z - h.sp2) * z - h.sp1) * z + h.sp0;
    return num / (2.0 * h.b1 * h.vartheta0 * ((h.b1 - 1.0) * z * z + 1.0)) + h.sigma0;
}

namespace {

// Coefficients (ascending powers) of N'(z) D(z) - N(z) D'(z), where sigma is
// N/D up to constant factors: N = sp3 z^3 - sp2 z^2 - sp1 z + sp0 and
// D = (b1-1) z^2 + 1.
std::array<double, 5> dsigma_numerator(const HugoniotCoeffs& h) {
    const double tm = h.b1 - 1.0;
    // N' D = (3 sp3 z^2 - 2 sp2 z - sp1)(tm z^2 + 1)
    // N D' = (sp3 z^3 - sp2 z^2 - sp1 z + sp0)(2 tm z)
    std::array<double, 5> k{};
    k[4] = 3.0 * h.sp3 * tm - 2.0 * tm * h.sp3;
    k[3] = -2.0 * h.sp2 * tm + 2.0 * tm * h.sp2;
    k[2] = -h.sp1 * tm + 3.0 * h.sp3 + 2.0 * tm * h.sp1;
    k[1] = -2.0 * h.sp2 - 2.0 * tm * h.sp0;
    k[0] = -h.sp1;
    return k;
}

}  // namespace

double dsigma_dz_along_hugoniot(const HugoniotCoeffs& h, double z) {
    const auto k = dsigma_numerator(h);
    const double num = (((k[4] * z + k[3]) * z + k[2]) * z + k[1]) * z + k[0];
    const double d = (h.b1 - 1.0) * z * z + 1.0;
    return num / (2.0 * h.b1 * h.vartheta0 * d * d);
}

std::vector<double> sigma_critical_points(const HugoniotCoeffs& h) {
    auto k = dsigma_numerator(h);
    // Strip vanishing leading terms so the companion matrix stays finite.
    int deg = 4;
    const double scale = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2]),
                                   std::abs(k[3]), std::abs(k[4]), 1e-300});
    while (deg > 0 && std::abs(k[deg]) <= 1e-13 * scale) --deg;
    std::vector<double> roots;
    if (deg == 0) return roots;
    Eigen::VectorXd coeffs(deg + 1);
    for (int i = 0; i <= deg; ++i) coeffs[i] = k[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    for (const auto& r : solver.roots()) {
        if (std::abs(r.imag()) <= 1e-9 * std::max(1.0, std::abs(r.real()))) {
            // Polish on the real line with a few Newton steps.
            double x = r.real();
            for (int it = 0; it < 4; ++it) {
                double f = 0, df = 0;
                for (int i = deg; i >= 0; --i) {
                    df = df * x + f;
                    f = f * x + k[i];
                }
                if (df == 0.0) break;
                x -= f / df;
            }
            roots.push_back(x);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool inside_scc(const ModelParams& p, const ManifoldPoint& q) {
    return hugoniot_coeffs(p, q).c_discriminant() < 0.0;
}

}  // namespace wm
