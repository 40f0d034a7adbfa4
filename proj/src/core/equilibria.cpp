#include "pll/equilibria.hpp"

#include "pll/errors.hpp"

#include <cmath>
#include <numbers>

namespace pll {

std::string_view to_string(Stability s) noexcept {
    switch (s) {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::Saddle: return "Saddle";
        case Stability::CenterDegenerate: return "Center-degenerate";
    }
    return "?";
}

namespace {

StabilityResult linearize(const Vec2& point, const PllParams& p) {
    const Mat2 j = phase_jacobian(point, p);
    const double tr = j[0][0] + j[1][1];
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
    // Eigenvalues ordered by descending real part.
    std::array<std::complex<double>, 2> ev{0.5 * (tr + disc), 0.5 * (tr - disc)};
    if (ev[0].real() < ev[1].real()) std::swap(ev[0], ev[1]);

    Stability s = Stability::CenterDegenerate;
    if (det < 0.0) {
        s = Stability::Saddle;
    } else if (ev[0].real() < 0.0 && ev[1].real() < 0.0) {
        s = Stability::Stable;
    } else if (ev[0].real() > 0.0 && ev[1].real() > 0.0) {
        s = Stability::Unstable;
    }
    return {s, ev};
}

Vec2 newton_step(const Vec2& s, const PllParams& p) {
    const Vec2 r = phase_rhs(s, p);
    const Mat2 j = phase_jacobian(s, p);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    if (det == 0.0) return s;
    const double dx = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
    const double dth = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
    return {s[0] - dx, s[1] - dth};
}

}  // namespace

StabilityResult classify_stability(const Vec2& point, const PllParams& p) {
    if (scaled_residual(point, p) > kEquilibriumTolerance) {
        throw NotAnEquilibrium("point (" + std::to_string(point[0]) + ", " +
                               std::to_string(point[1]) + ") is not an equilibrium");
    }
    return linearize(point, p);
}

double lock_filter_state(const PllParams& p, double theta_eq) noexcept {
    return 0.5 * p.filter.tau1 * std::sin(theta_eq);
}

std::vector<Equilibrium> equilibria(const PllParams& p, int k_min, int k_max) {
    std::vector<Equilibrium> out;
    const double s = 2.0 * p.omega_delta / p.vco_gain;
    if (std::abs(s) > 1.0 || k_max < k_min) return out;
    const double base = std::asin(s);
    const LoopFilter& f = p.filter;
    for (int k = k_min; k <= k_max; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        Equilibrium e;
        e.k = k;
        e.theta_eq = sign * base + std::numbers::pi * k;
        // dx/dt = 0  =>  x = -(b/a) * sin(theta)/2
        e.x_eq = -(f.b / f.a) * 0.5 * std::sin(e.theta_eq);
        const Vec2 refined = newton_step(e.vec(), p);
        e.x_eq = refined[0];
        e.theta_eq = refined[1];
        const StabilityResult r = linearize(e.vec(), p);
        e.stability = r.stability;
        e.eigenvalues = r.eigenvalues;
        out.push_back(e);
    }
    return out;
}

}  // namespace pll
