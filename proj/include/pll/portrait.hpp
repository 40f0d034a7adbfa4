#pragma once

#include "pll/classify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pll {

struct PortraitEntry {
    PhaseState init;
    std::optional<Trajectory2> trajectory;  ///< empty if integration failed
    std::optional<Outcome> outcome;
    std::optional<std::string> error;
};

struct Portrait {
    std::vector<PortraitEntry> entries;
    std::vector<Equilibrium> equilibria;    ///< k = 0 and k = 1
    std::optional<double> cycle_fixed_point;  ///< x where the stable cycle crosses cycle_section
    double cycle_section = 0.0;
    std::optional<double> boundary;         ///< bisected lock/cycle boundary at boundary_section
    double boundary_section = 0.0;
};

struct PortraitOptions {
    Thresholds thresholds;
    bool overlays = true;
    double boundary_tol = 1e-6;
    std::size_t threads = 0;
};

/// Integrates every initial state under cfg (in parallel, results in input
/// order) and classifies each. With overlays on, also reports the
/// equilibria, the return-map fixed point of the first cycling entry, and the
/// lock/cycle boundary bisected between the closest pair of entries that
/// share theta(0) and classify differently.
[[nodiscard]] Portrait portrait(const PllParams& p, const std::vector<PhaseState>& inits,
                                const SolverConfig& cfg, const PortraitOptions& opt = {});

}  // namespace pll
