#pragma once

#include "pll/integrator.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace pll {

struct ConvergenceStudy {
    std::vector<double> steps;
    std::vector<double> errors;  ///< max-norm error at t_end, one per step
    double order = 0.0;          ///< least-squares slope of log(error) vs log(step)
};

/// Least-squares slope of log(errors) against log(steps).
[[nodiscard]] inline double log_log_slope(const std::vector<double>& steps,
                                          const std::vector<double>& errors) {
    const std::size_t n = steps.size();
    if (n < 2 || errors.size() != n) throw DomainError("need at least two (step, error) pairs");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(steps[i] > 0.0) || !(errors[i] > 0.0)) {
            throw DomainError("steps and errors must be positive for a log-log fit");
        }
        const double lx = std::log(steps[i]);
        const double ly = std::log(errors[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

/// Measures the empirical order of a fixed-step method. The reference is
/// `reference` when given, otherwise a tight adaptive RK45 solution
/// (rel_tol 1e-13) of the same problem.
template <std::size_t N>
ConvergenceStudy convergence_order(const RhsFn<N>& rhs, const StateN<N>& init, Method method,
                                   const std::vector<double>& steps, double t_end,
                                   std::optional<StateN<N>> reference = std::nullopt) {
    if (method == Method::AdaptiveRK45) {
        throw DomainError("convergence_order measures fixed-step methods");
    }
    if (!reference) {
        SolverConfig ref = SolverConfig::adaptive(1e-13, 1e-15, t_end, t_end / 1000.0);
        ref.min_step = 1e-15;
        reference = integrate<N>(rhs, init, ref).trajectory.back().y;
    }
    ConvergenceStudy study;
    study.steps = steps;
    for (double h : steps) {
        const auto res = integrate<N>(rhs, init, SolverConfig::fixed(method, h, t_end));
        const StateN<N>& y = res.trajectory.back().y;
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) err = std::max(err, std::abs(y[i] - (*reference)[i]));
        study.errors.push_back(err);
    }
    study.order = log_log_slope(study.steps, study.errors);
    return study;
}

}  // namespace pll
