#pragma once

#include "pll/classify.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pll {

struct SweepReport {
    PhaseState init;
    std::vector<SolverConfig> grid;
    std::vector<Outcome> outcomes;                  ///< per grid entry
    std::vector<std::optional<std::string>> errors; ///< integrator failure per grid entry
    SolverConfig oracle;
    Outcome oracle_outcome;
    std::vector<std::size_t> divergent;             ///< grid indices whose kind != oracle kind
};

/// True if `oracle` resolves at least as finely as `cfg`: the oracle is
/// adaptive and, against an adaptive cfg, has rel_tol, abs_tol and max_step
/// no larger. Fixed-step configs are always treated as coarser.
[[nodiscard]] bool resolves_at_least(const SolverConfig& oracle, const SolverConfig& cfg) noexcept;

/// Classifies the trajectory from `init` under every grid config and under
/// the oracle, and flags the configs that disagree with the oracle. A grid
/// cell whose integration fails becomes Undetermined with the error recorded.
/// Cells run on resolve_threads(threads) workers; results keep grid order.
/// Throws DomainError if the oracle is not at least as tight as every cell.
[[nodiscard]] SweepReport tolerance_sweep(const PllParams& p, const PhaseState& init,
                                          const std::vector<SolverConfig>& grid,
                                          const SolverConfig& oracle, const Thresholds& th = {},
                                          std::size_t threads = 0);

/// Twelve configs from coarse to fine: Euler (20 ms, 1 ms), RK4 (10, 1,
/// 0.1 ms), then RK45 with rel_tol 1e-1 ... 1e-9 (abs_tol = rel_tol * 1e-3,
/// max_step 0.1 s).
[[nodiscard]] std::vector<SolverConfig> canonical_grid(double t_end = 5.0);

/// Parses a grid description: comma-separated entries "euler:H", "rk4:H",
/// "rk45:RTOL[:ATOL[:MAXSTEP]]", or the word "canonical". Throws DomainError.
[[nodiscard]] std::vector<SolverConfig> parse_grid(const std::string& spec, double t_end = 5.0);

[[nodiscard]] nlohmann::ordered_json to_json(const SolverConfig& cfg);
[[nodiscard]] nlohmann::ordered_json to_json(const Outcome& outcome);
/// {"init", "grid", "outcomes", "oracle", "divergent"} in that order.
[[nodiscard]] nlohmann::ordered_json to_json(const SweepReport& report);

}  // namespace pll
