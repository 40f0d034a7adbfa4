#include "pll/model.hpp"

#include "pll/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pll {

PllParams PllParams::make(const LoopFilter& filter, double vco_gain, double omega1,
                          double omega_free) {
    if (!(vco_gain > 0.0) || !std::isfinite(vco_gain)) {
        throw DomainError("VCO gain must be positive and finite");
    }
    if (!std::isfinite(omega1) || !std::isfinite(omega_free)) {
        throw DomainError("frequencies must be finite");
    }
    if (!(filter.tau1 > 0.0) || filter.tau2 < 0.0) {
        throw DomainError("loop filter is not a valid lead-lag realization");
    }
    PllParams p;
    p.filter = filter;
    p.vco_gain = vco_gain;
    p.omega1 = omega1;
    p.omega_free = omega_free;
    p.omega_delta = omega1 - omega_free;
    return p;
}

PllParams PllParams::with_detuning(double detuning) const {
    return make(filter, vco_gain, omega1, omega1 - detuning);
}

PllParams canonical_params() {
    return PllParams::make(make_lead_lag(0.0448, 0.0185), 500.0, 10000.0, 10000.0 - 178.9);
}

Vec2 phase_rhs(const Vec2& s, const PllParams& p) noexcept {
    const LoopFilter& f = p.filter;
    const double half_sin = 0.5 * std::sin(s[1]);
    return {f.a * s[0] + f.b * half_sin,
            p.omega_delta - p.vco_gain * f.c * s[0] - f.h * p.vco_gain * half_sin};
}

Vec2 phase_rhs(const PhaseState& s, const PllParams& p) noexcept {
    return phase_rhs(s.vec(), p);
}

double circuit_detector(double t, double theta2, const PllParams& p) noexcept {
    const double theta1 = p.omega1 * t;
    const double ref_sin = std::sin(theta1);
    const double ref_cos = std::cos(theta1);
    const double vco_sin = std::sin(theta2);
    const double vco_cos = std::cos(theta2);
    return 0.5 * (ref_sin * vco_cos - ref_cos * vco_sin);
}

Vec2 circuit_rhs(double t, const Vec2& s, const PllParams& p) noexcept {
    const LoopFilter& f = p.filter;
    const double phi = circuit_detector(t, s[1], p);
    const double g = f.c * s[0] + f.h * phi;
    return {f.a * s[0] + f.b * phi, p.omega_free + p.vco_gain * g};
}

Vec2 circuit_rhs(const CircuitState& s, const PllParams& p) noexcept {
    return circuit_rhs(s.t, s.vec(), p);
}

double phase_filter_output(const Vec2& s, const PllParams& p) noexcept {
    return p.filter.c * s[0] + p.filter.h * 0.5 * std::sin(s[1]);
}

double circuit_filter_output(double t, const Vec2& s, const PllParams& p) noexcept {
    return p.filter.c * s[0] + p.filter.h * circuit_detector(t, s[1], p);
}

Mat2 phase_jacobian(const Vec2& s, const PllParams& p) noexcept {
    const LoopFilter& f = p.filter;
    const double half_cos = 0.5 * std::cos(s[1]);
    return {{{f.a, f.b * half_cos},
             {-p.vco_gain * f.c, -f.h * p.vco_gain * half_cos}}};
}

Scales model_scales(const PllParams& p) noexcept {
    return {0.5 * p.filter.tau1, 0.5 * p.filter.b, 0.5 * p.vco_gain};
}

double scaled_residual(const Vec2& state, const PllParams& p) noexcept {
    const Vec2 r = phase_rhs(state, p);
    const Scales sc = model_scales(p);
    return std::max(std::abs(r[0]) / sc.dx, std::abs(r[1]) / sc.dtheta);
}

double wrap_angle(double theta) noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(theta + std::numbers::pi, two_pi);
    if (r < 0.0) r += two_pi;
    return r - std::numbers::pi;
}

}  // namespace pll
