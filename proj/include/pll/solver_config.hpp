#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pll {

enum class Method { Euler, RK4, AdaptiveRK45 };

[[nodiscard]] std::string_view to_string(Method m) noexcept;
/// Accepts "euler", "rk4", "rk45" (case-insensitive). Throws DomainError.
[[nodiscard]] Method parse_method(std::string_view name);

struct SolverConfig {
    Method method = Method::AdaptiveRK45;
    double fixed_step = 1e-3;           ///< Euler / RK4 step, seconds
    double rel_tol = 1e-9;
    std::vector<double> abs_tol{1e-12};  ///< one entry (broadcast) or one per component
    double max_step = 0.1;
    double min_step = 1e-12;
    double t_end = 5.0;                 ///< integration length, seconds

    [[nodiscard]] bool is_adaptive() const noexcept { return method == Method::AdaptiveRK45; }

    /// Throws DomainError when a field violates its constraint.
    void validate() const;

    /// abs_tol for component i.
    [[nodiscard]] double abs_tol_at(std::size_t i) const noexcept {
        return abs_tol.size() == 1 ? abs_tol.front() : abs_tol[i];
    }

    /// Short human-readable tag, e.g. "rk4 h=0.001" or "rk45 rtol=1e-09".
    [[nodiscard]] std::string label() const;

    [[nodiscard]] static SolverConfig fixed(Method m, double step, double t_end = 5.0);
    [[nodiscard]] static SolverConfig adaptive(double rel_tol, double abs_tol, double t_end = 5.0,
                                               double max_step = 0.1);
};

/// AdaptiveRK45, rel_tol 1e-9, abs_tol 1e-12, t_end 5 s: ground truth for classification.
[[nodiscard]] SolverConfig oracle_config(double t_end = 5.0);

/// RK4 with a fixed 1 ms step.
[[nodiscard]] SolverConfig coarse_config(double t_end = 5.0);

}  // namespace pll
