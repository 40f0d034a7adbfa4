#include "pll/simulate.hpp"

namespace pll {

RhsFn<2> phase_system(const PllParams& p) {
    return [p](double, const Vec2& y) { return phase_rhs(y, p); };
}

RhsFn<2> circuit_system(const PllParams& p) {
    return [p](double t, const Vec2& y) { return circuit_rhs(t, y, p); };
}

IntegrationResult<2> simulate_phase(const PllParams& p, const PhaseState& init,
                                    const SolverConfig& cfg, const std::vector<EventSpec<2>>& events) {
    const ScalarFn<2> g = [p](double, const Vec2& y) { return phase_filter_output(y, p); };
    return integrate<2>(phase_system(p), init.vec(), cfg, events, g);
}

IntegrationResult<2> simulate_circuit(const PllParams& p, const CircuitState& init,
                                      const SolverConfig& cfg) {
    const ScalarFn<2> g = [p](double t, const Vec2& y) { return circuit_filter_output(t, y, p); };
    return integrate<2>(circuit_system(p), init.vec(), cfg, {}, g, init.t);
}

CircuitState to_circuit_state(const PhaseState& s, const PllParams& p) noexcept {
    return {s.x, p.omega1 * s.t - s.theta_delta, s.t};
}

Trajectory2 to_phase_trajectory(const Trajectory2& circuit, const PllParams& p) {
    Trajectory2 out;
    out.stats = circuit.stats;
    out.terminated_by = circuit.terminated_by;
    out.samples.reserve(circuit.samples.size());
    for (const auto& s : circuit.samples) {
        out.samples.push_back({s.t, {s.y[0], p.omega1 * s.t - s.y[1]}, s.g});
    }
    return out;
}

}  // namespace pll
