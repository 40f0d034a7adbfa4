#pragma once

#include "pll/classify.hpp"

#include <cstdint>
#include <vector>

namespace pll {

enum class AttractorClass { SelfExcited, Hidden };

[[nodiscard]] std::string_view to_string(AttractorClass c) noexcept;

struct BasinProbe {
    std::size_t n_probes = 64;  ///< per unstable equilibrium
    double radius = 1e-2;       ///< in scaled units (x / (tau1/2), theta in rad)
    std::uint64_t seed = 0;
    SolverConfig cfg = oracle_config();
    Thresholds thresholds;
    double period_rtol = 1e-3;  ///< period match that identifies the cycle
};

struct AttractorReport {
    AttractorClass classification = AttractorClass::Hidden;
    std::size_t probes = 0;
    std::size_t to_cycle = 0;
    std::size_t locked = 0;
    std::size_t other = 0;          ///< definite outcome that is not this cycle
    std::size_t inconclusive = 0;   ///< still Undetermined after the budget extension
    bool budget_extended = false;
    bool inconclusive_flag = false; ///< some probes never settled
};

/// Does the probe's outcome land on the given cycle? Same winding direction
/// and a period within period_rtol. Works across section phases, since the
/// period does not depend on where the cycle is cut.
[[nodiscard]] bool reaches_cycle(const Outcome& probe, const Outcome& cycle, double period_rtol = 1e-3);

/// Points drawn uniformly from the scaled disk of `radius` around `centre`.
[[nodiscard]] std::vector<PhaseState> probe_points(const Equilibrium& centre, const PllParams& p,
                                                   std::size_t n, double radius, std::uint64_t seed);

/// SelfExcited if some probe started near an unstable (or saddle)
/// equilibrium ends on the cycle, Hidden otherwise; vacuously Hidden without
/// unstable equilibria. Probes that stay Undetermined are re-run once with
/// twice the integration time. Throws DomainError unless `cycle` is a
/// RotationalCycle.
[[nodiscard]] AttractorReport attractor_class(const Outcome& cycle,
                                              const std::vector<Equilibrium>& equilibria,
                                              const PllParams& p, const BasinProbe& probe = {});

}  // namespace pll
