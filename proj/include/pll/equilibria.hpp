#pragma once

#include "pll/model.hpp"

#include <complex>
#include <string_view>
#include <utility>
#include <vector>

namespace pll {

enum class Stability { Stable, Unstable, Saddle, CenterDegenerate };

[[nodiscard]] std::string_view to_string(Stability s) noexcept;

struct Equilibrium {
    int k = 0;
    double x_eq = 0.0;
    double theta_eq = 0.0;
    Stability stability = Stability::CenterDegenerate;
    std::array<std::complex<double>, 2> eigenvalues{};

    [[nodiscard]] Vec2 vec() const noexcept { return {x_eq, theta_eq}; }
};

struct StabilityResult {
    Stability stability;
    std::array<std::complex<double>, 2> eigenvalues;
};

/// Residual tolerance (scaled units) for accepting a point as an equilibrium.
inline constexpr double kEquilibriumTolerance = 1e-8;

/// Linearizes phase_rhs at an equilibrium and classifies it from the
/// eigenvalues of the 2x2 Jacobian. Throws NotAnEquilibrium when the scaled
/// residual exceeds kEquilibriumTolerance.
[[nodiscard]] StabilityResult classify_stability(const Vec2& point, const PllParams& p);

/// Equilibria theta = (-1)^k asin(2 omega_delta / L) + pi k for k in
/// [k_min, k_max], x from setting dx/dt = 0. Each point gets one Newton step
/// on phase_rhs. Empty when |2 omega_delta / L| > 1.
[[nodiscard]] std::vector<Equilibrium> equilibria(const PllParams& p, int k_min, int k_max);

/// Closed-form lock value x_eq = (tau1/2) sin(theta_eq).
[[nodiscard]] double lock_filter_state(const PllParams& p, double theta_eq) noexcept;

}  // namespace pll
