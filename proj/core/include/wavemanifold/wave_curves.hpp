#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wavemanifold/foliations.hpp"

namespace wm {

enum class ArcKind { shock, rarefaction, composite };
const char* to_string(ArcKind k);

enum class Structure { Case1, Case2_1, Case2_2 };
const char* to_string(Structure s);

// One sigma-monotone piece of a wave curve. Points are evaluated exactly from
// the arc's own parameter: z along the Hugoniot (or Hugoniot') curve of the
// base for shocks, z along the rarefaction for rarefactions, and the
// rarefaction parameter of the sonic image for composites.
class WaveArc {
public:
    ArcKind kind = ArcKind::shock;
    Family family = Family::slow;
    bool sigma_increasing = false;
    double param_begin = 0.0;
    double param_end = 0.0;
    Termination termination = Termination::none;
    // Resampled to roughly equal sigma increments, endpoints included.
    std::vector<ArcSample> samples;

    ManifoldPoint at(double param) const;
    double sigma_at(double param) const { return sigma(params_, at(param)); }
    bool contains(double param) const;
    // Point of the characteristic plane that a composite point at param
    // pairs with (its sonic image); the point itself for rarefactions.
    ManifoldPoint sonic_image(double param) const;
    // Generating rarefaction of rarefaction and composite arcs (null for shocks).
    const std::shared_ptr<const OdeArc>& source() const { return rarefaction_; }

private:
    friend class WaveCurveBuilder;
    ModelParams params_;
    std::optional<HugoniotCoeffs> hugoniot_;
    std::shared_ptr<const OdeArc> rarefaction_;
    std::shared_ptr<const OdeArc> composite_;
};

struct WaveCurve {
    ModelParams params;
    ManifoldPoint base;
    Family family = Family::slow;
    Structure structure = Structure::Case1;
    bool truncated = false;
    std::vector<WaveArc> arcs;

    std::string structure_string() const;
    std::shared_ptr<const OdeArc> rarefaction() const;
};

struct CurveOptions {
    double z_max = kDefaultZMax;
    int samples_per_arc = 400;
    OdeOptions ode;
};

WaveCurve build_slow_wave_curve(const ModelParams& p, const ManifoldPoint& u0,
                                const CurveOptions& opt = {});
WaveCurve build_fast_wave_curve(const ModelParams& p, const ManifoldPoint& u0,
                                const CurveOptions& opt = {});
WaveCurve build_wave_curve(const ModelParams& p, const ManifoldPoint& u0, Family family,
                           const CurveOptions& opt = {});

struct CurvePosition {
    std::size_t arc = 0;
    double param = 0.0;
};

// An elementary wave of a Riemann solution: a centered fan occupying
// [sigma_lo, sigma_hi] or a shock at sigma_lo == sigma_hi.
struct ElementaryWave {
    enum class Kind { fan, shock } kind = Kind::shock;
    Family family = Family::slow;
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;
    State left;
    State right;
    // Fans keep the rarefaction they were cut from and their parameter range.
    std::shared_ptr<const OdeArc> rarefaction;
    double param_lo = 0.0;
    double param_hi = 0.0;
};

// Waves of one family joining the base state to the state selected by pos,
// ordered left to right.
std::vector<ElementaryWave> wave_group_at(const WaveCurve& curve, const CurvePosition& pos);

// State of a fan at speed xi (sigma inversion along the rarefaction).
State fan_state(const ModelParams& p, const ElementaryWave& fan, double xi);

}  // namespace wm
