#pragma once

#include "pll/classify.hpp"

#include <vector>

namespace pll {

/// Successive crossings of the Poincare section theta_delta = section_phase
/// (mod 2 pi) in the winding direction, starting on the section at x0.
struct ReturnMap {
    double section_phase = 0.0;
    int direction = 0;
    std::vector<SectionCrossing> crossings;
};

/// Winding direction of the trajectory from `init` by the net drift over the
/// first `windings` turns, integrated for at most cfg.t_end. Returns 0 if the
/// trajectory never completes a turn.
[[nodiscard]] int detect_winding_direction(const PllParams& p, const PhaseState& init,
                                           const SolverConfig& cfg, std::size_t windings = 10);

/// Follows the trajectory from (x0, section_phase) for n_crossings returns to
/// the section. Each return is located as a terminal event; cfg.t_end is the
/// time allowed per return. Throws NoWinding if the trajectory stops winding
/// (it locks) before n_crossings returns.
[[nodiscard]] ReturnMap return_map(const PllParams& p, double section_phase, double x0,
                                   std::size_t n_crossings, const SolverConfig& cfg);

/// P(x0): the first return in the given direction.
[[nodiscard]] double first_return(const PllParams& p, double section_phase, double x0, int direction,
                                  const SolverConfig& cfg);

/// Fixed point of the return map found by iterating P from x0 until
/// |P(x) - x| < tol. Converges to attracting cycles only.
[[nodiscard]] double iterate_to_fixed_point(const PllParams& p, double section_phase, double x0,
                                            const SolverConfig& cfg, double tol = 1e-10,
                                            std::size_t max_iter = 2000);

}  // namespace pll
