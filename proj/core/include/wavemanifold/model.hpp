#pragma once

#include <array>
#include <optional>
#include <utility>

namespace wm {

// Coefficients of the quadratic flux
//   f = (b1+1)u^2/2 + v^2/2 + a1 u + a2 v,   g = u v + a3 u + a4 v.
// The u v term of f is absent (symmetric case), so b2 is not stored.
struct ModelParams {
    double b1 = 8.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 1.0;
    double a4 = 0.0;

    double c() const { return a3 - a2; }
    double sigma0() const { return ((b1 + 1.0) * a4 - a1) / b1; }
    // Throws InvalidParams unless b1 > 1 and c > 0.
    void validate() const;
    // True when (x, u) -> (-x, -u) is an exact symmetry of the chart.
    bool mirror_symmetric() const;
};

struct State {
    double u = 0.0;
    double v = 0.0;
};

struct CharData {
    double delta = 0.0;
    // Absent at elliptic points (delta < 0).
    std::optional<double> lambda_s;
    std::optional<double> lambda_f;

    bool elliptic() const { return delta < 0.0; }
};

using Mat2 = std::array<std::array<double, 2>, 2>;

std::pair<double, double> flux(const ModelParams& p, const State& w);
Mat2 jacobian(const ModelParams& p, const State& w);
double discriminant(const ModelParams& p, const State& w);
CharData char_data(const ModelParams& p, const State& w);
bool is_strictly_hyperbolic(const ModelParams& p, const State& w);
// Largest eigenvalue modulus of DF (real part magnitude plus imaginary part
// at elliptic points); used as the Rusanov dissipation coefficient.
double spectral_radius(const ModelParams& p, const State& w);

}  // namespace wm
