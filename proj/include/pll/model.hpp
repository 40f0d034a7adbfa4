#pragma once

// Two-phase PLL with a first-order loop filter, in two equivalent forms:
//
//  * phase domain   (x, theta_delta): theta_delta = omega1*t - theta2,
//  * circuit level  (x, theta2): the reference phase theta1 = omega1*t is
//    carried by time and the phase detector is built from the four
//    quadrature signals sin/cos(theta1), sin/cos(theta2).
//
// The phase-detector gain of 1/2 is part of both right-hand sides.

#include "pll/loop_filter.hpp"

#include <array>

namespace pll {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

struct PllParams {
    LoopFilter filter;
    double vco_gain = 0.0;     ///< L
    double omega1 = 0.0;       ///< reference frequency, rad/s
    double omega_free = 0.0;   ///< VCO free-running frequency, rad/s
    double omega_delta = 0.0;  ///< omega1 - omega_free

    /// Validated constructor; omega_delta is derived.
    [[nodiscard]] static PllParams make(const LoopFilter& filter, double vco_gain,
                                        double omega1, double omega_free);

    /// Same loop with omega_free moved so that omega1 - omega_free == detuning.
    [[nodiscard]] PllParams with_detuning(double detuning) const;
};

/// tau1 = 0.0448, tau2 = 0.0185, L = 500, omega1 = 10000, omega_free = 10000 - 178.9.
[[nodiscard]] PllParams canonical_params();

struct PhaseState {
    double x = 0.0;
    double theta_delta = 0.0;
    double t = 0.0;

    [[nodiscard]] Vec2 vec() const noexcept { return {x, theta_delta}; }
};

struct CircuitState {
    double x = 0.0;
    double theta2 = 0.0;
    double t = 0.0;

    [[nodiscard]] Vec2 vec() const noexcept { return {x, theta2}; }
};

/// (dx/dt, d theta_delta/dt). Autonomous; t is ignored.
[[nodiscard]] Vec2 phase_rhs(const Vec2& state, const PllParams& p) noexcept;
[[nodiscard]] Vec2 phase_rhs(const PhaseState& s, const PllParams& p) noexcept;

/// Phase-detector output 1/2 (sin th1 cos th2 - cos th1 sin th2), unsimplified.
[[nodiscard]] double circuit_detector(double t, double theta2, const PllParams& p) noexcept;

/// (dx/dt, d theta2/dt) of the circuit-level model at time t.
[[nodiscard]] Vec2 circuit_rhs(double t, const Vec2& state, const PllParams& p) noexcept;
[[nodiscard]] Vec2 circuit_rhs(const CircuitState& s, const PllParams& p) noexcept;

/// Filter output g = c*x + h*phi for the phase-domain state.
[[nodiscard]] double phase_filter_output(const Vec2& state, const PllParams& p) noexcept;
/// Filter output g for the circuit-level state at time t.
[[nodiscard]] double circuit_filter_output(double t, const Vec2& state, const PllParams& p) noexcept;

/// Analytic Jacobian of phase_rhs.
[[nodiscard]] Mat2 phase_jacobian(const Vec2& state, const PllParams& p) noexcept;

/// Magnitudes used to nondimensionalize the state and the right-hand side:
/// x is measured against tau1/2 (the largest |x_eq|), theta in radians;
/// dx/dt against b/2 and d theta/dt against L/2.
struct Scales {
    double x;
    double dx;
    double dtheta;
};
[[nodiscard]] Scales model_scales(const PllParams& p) noexcept;

/// max(|dx/dt| / dx-scale, |dtheta/dt| / dtheta-scale).
[[nodiscard]] double scaled_residual(const Vec2& state, const PllParams& p) noexcept;

/// Wraps an angle into [-pi, pi).
[[nodiscard]] double wrap_angle(double theta) noexcept;

}  // namespace pll
