#pragma once

#include "pll/equilibria.hpp"
#include "pll/simulate.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pll {

enum class OutcomeKind { Lock, RotationalCycle, Undetermined };

[[nodiscard]] std::string_view to_string(OutcomeKind k) noexcept;

struct LockEvidence {
    double theta_distance = 0.0;  ///< final wrapped |theta - theta_eq|
    double x_distance = 0.0;      ///< final |x - x_eq|
    double hold_duration = 0.0;   ///< time the state has stayed within the lock thresholds
};

struct CycleEvidence {
    int direction = 0;            ///< +1 theta advancing, -1 falling
    std::size_t windings = 0;     ///< full 2 pi turns in `direction`
    double fixed_point = 0.0;     ///< last return-map value x_k at the starting phase
    double last_map_step = 0.0;   ///< |x_k - x_{k-1}|
    double period = 0.0;          ///< mean time between the last section crossings
};

struct Outcome {
    OutcomeKind kind = OutcomeKind::Undetermined;
    std::optional<LockEvidence> lock;
    std::optional<CycleEvidence> cycle;
    std::string reason;  ///< set for Undetermined
};

struct Thresholds {
    double eps_theta = 0.05;      ///< rad, wrapped distance to theta_eq
    double eps_x = 1e-3;          ///< volts
    double hold_fraction = 0.1;   ///< final fraction of the trajectory that must stay locked
    double min_hold = 0.0;        ///< classify rejects trajectories shorter than this, seconds
    std::size_t min_windings = 10;
    double eps_map = 1e-6;        ///< convergence threshold for successive return-map values
};

/// One crossing of the section theta = theta0 + 2 pi k * direction.
struct SectionCrossing {
    double t = 0.0;
    double x = 0.0;
};

/// Net winding direction: the sign of theta - theta0 at the first sample
/// where |theta - theta0| reaches 2 pi * windings, otherwise the sign of the
/// overall drift (0 if it never completes a turn).
[[nodiscard]] int winding_direction(const Trajectory2& traj, std::size_t windings = 10);

/// Crossings of theta0 + 2 pi k * direction (k = 1, 2, ...) extracted from a
/// phase-domain trajectory with cubic Hermite interpolation between samples.
[[nodiscard]] std::vector<SectionCrossing> section_crossings(const Trajectory2& traj,
                                                             const PllParams& p, int direction);

/// Long-run behaviour of a phase-domain trajectory.
///
/// Lock: every sample in the final hold window is within eps_theta (wrapped)
/// and eps_x of a stable equilibrium. RotationalCycle: at least min_windings
/// turns and the return map at the starting phase has settled
/// (|x_k - x_{k-1}| < eps_map and not growing). Undetermined otherwise.
///
/// Throws DomainError for trajectories with fewer than two samples or shorter
/// than Thresholds::min_hold.
[[nodiscard]] Outcome classify(const Trajectory2& traj, const PllParams& p, const Thresholds& th = {});

/// simulate_phase + classify. Integrator errors propagate.
[[nodiscard]] Outcome classify_initial(const PllParams& p, const PhaseState& init,
                                       const SolverConfig& cfg, const Thresholds& th = {});

}  // namespace pll
