#pragma once

namespace pll {

/// First-order state-space realization of a passive lead-lag loop filter,
///
///     H(s) = (1 + s*tau2) / (1 + s*(tau1 + tau2)),
///
/// written as  x' = a*x + b*u,  g = c*x + h*u  so that H(s) = c*b/(s - a) + h.
struct LoopFilter {
    double tau1 = 0.0;
    double tau2 = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double h = 0.0;

    /// H(0) of the realization; 1 for every lead-lag filter.
    [[nodiscard]] double dc_gain() const noexcept { return c * (-1.0 / a) * b + h; }
};

/// Builds the lead-lag realization. Throws DomainError on negative time
/// constants or a non-positive tau1 + tau2.
[[nodiscard]] LoopFilter make_lead_lag(double tau1, double tau2);

}  // namespace pll
