#pragma once

#include "pll/integrator.hpp"
#include "pll/model.hpp"
#include "pll/trajectory_csv.hpp"

#include <vector>

namespace pll {

[[nodiscard]] RhsFn<2> phase_system(const PllParams& p);
[[nodiscard]] RhsFn<2> circuit_system(const PllParams& p);

/// Integrates the phase-domain model from `init` (init.t is ignored; the
/// trajectory starts at t = 0). Sample::g is the filter output.
[[nodiscard]] IntegrationResult<2> simulate_phase(const PllParams& p, const PhaseState& init,
                                                  const SolverConfig& cfg,
                                                  const std::vector<EventSpec<2>>& events = {});

/// Integrates the circuit-level model from `init` at t = 0.
[[nodiscard]] IntegrationResult<2> simulate_circuit(const PllParams& p, const CircuitState& init,
                                                    const SolverConfig& cfg);

/// Circuit initial condition matching a phase-domain one at t = 0.
[[nodiscard]] CircuitState to_circuit_state(const PhaseState& s, const PllParams& p) noexcept;

/// Rewrites a circuit-level trajectory as (x, theta_delta = omega1 t - theta2);
/// g is carried over unchanged.
[[nodiscard]] Trajectory2 to_phase_trajectory(const Trajectory2& circuit, const PllParams& p);

}  // namespace pll
