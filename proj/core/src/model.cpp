#include "wavemanifold/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wavemanifold/errors.hpp"

namespace wm {

void ModelParams::validate() const {
    if (!(b1 > 1.0)) {
        std::ostringstream os;
        os << "model requires b1 > 1, got " << b1;
        throw InvalidParams(os.str());
    }
    if (!(c() > 0.0)) {
        std::ostringstream os;
        os << "model requires c = a3 - a2 > 0, got " << c();
        throw InvalidParams(os.str());
    }
}

bool ModelParams::mirror_symmetric() const { return a1 == a4; }

std::pair<double, double> flux(const ModelParams& p, const State& w) {
    const double u = w.u;
    const double v = w.v;
    const double f = 0.5 * (p.b1 + 1.0) * u * u + 0.5 * v * v + p.a1 * u + p.a2 * v;
    const double g = u * v + p.a3 * u + p.a4 * v;
    return {f, g};
}

Mat2 jacobian(const ModelParams& p, const State& w) {
    return {{{(p.b1 + 1.0) * w.u + p.a1, w.v + p.a2}, {w.v + p.a3, w.u + p.a4}}};
}

double discriminant(const ModelParams& p, const State& w) {
    const double s = p.b1 * w.u + p.a1 - p.a4;
    return s * s + 4.0 * (w.v + p.a2) * (w.v + p.a3);
}

CharData char_data(const ModelParams& p, const State& w) {
    CharData out;
    out.delta = discriminant(p, w);
    if (out.delta >= 0.0) {
        const Mat2 J = jacobian(p, w);
        const double half_trace = 0.5 * (J[0][0] + J[1][1]);
        const double r = 0.5 * std::sqrt(out.delta);
        out.lambda_s = half_trace - r;
        out.lambda_f = half_trace + r;
    }
    return out;
}

bool is_strictly_hyperbolic(const ModelParams& p, const State& w) {
    return discriminant(p, w) > 0.0;
}

double spectral_radius(const ModelParams& p, const State& w) {
    const Mat2 J = jacobian(p, w);
    const double half_trace = 0.5 * (J[0][0] + J[1][1]);
    const double delta = discriminant(p, w);
    if (delta >= 0.0) return std::abs(half_trace) + 0.5 * std::sqrt(delta);
    return std::hypot(half_trace, 0.5 * std::sqrt(-delta));
}

}  // namespace wm
