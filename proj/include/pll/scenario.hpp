#pragma once

#include "pll/classify.hpp"

#include <iosfwd>
#include <string>

namespace pll {

enum class ModelKind { Phase, Circuit };

[[nodiscard]] std::string_view to_string(ModelKind m) noexcept;

/// Everything one experiment needs.
///
/// File format (INI style, ';' comments):
///
///     model = phase            ; or circuit
///     [filter]  tau1, tau2
///     [loop]    vco_gain, omega1, omega_free | omega_delta
///     [init]    x, theta       ; theta2 instead of theta for circuit-level input
///     [solver]  method, fixed_step, rel_tol, abs_tol, max_step, min_step, t_end
///     [classify] eps_theta, eps_x, hold_fraction, min_windings, eps_map
///
/// Frequencies are rad/s; a key with an `_hz` suffix (omega1_hz, ...) is
/// given in Hz and converted by 2 pi.
struct Scenario {
    PllParams params;
    PhaseState init;
    SolverConfig solver;
    ModelKind model = ModelKind::Phase;
    Thresholds thresholds;
};

/// The lead-lag experiment: tau1 = 0.0448, tau2 = 0.0185, L = 500,
/// omega1 = 10000, omega_free = 9821.1, init (0.1318, 0), oracle solver.
[[nodiscard]] Scenario canonical_scenario();

/// Throws ParseError on syntax errors, unknown sections/keys or bad numbers,
/// DomainError on invalid values.
[[nodiscard]] Scenario parse_scenario(std::istream& is);
[[nodiscard]] Scenario load_scenario(const std::string& path);

}  // namespace pll
