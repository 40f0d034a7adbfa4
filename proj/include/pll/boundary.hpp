#pragma once

#include "pll/classify.hpp"

#include <vector>

namespace pll {

struct BoundaryBracket {
    double lo = 0.0;
    double hi = 0.0;
    OutcomeKind lo_kind = OutcomeKind::Undetermined;
    OutcomeKind hi_kind = OutcomeKind::Undetermined;
};

struct BoundaryResult {
    double x_boundary = 0.0;               ///< midpoint of the final bracket
    BoundaryBracket bracket;               ///< final bracket, width < tol
    std::vector<BoundaryBracket> history;  ///< bracket at the start of every iteration
};

/// Bisects on the initial filter state x(0) at fixed theta_delta(0) = theta0
/// between a locking and a cycling initial condition until the bracket is
/// narrower than tol. The limit is where the unstable cycle crosses the
/// section theta = theta0.
///
/// A midpoint that classifies as Undetermined is re-run once with twice the
/// integration time. Throws SameOutcome if the endpoints agree (or either
/// is Undetermined), Error if a midpoint stays Undetermined.
[[nodiscard]] BoundaryResult bisect_boundary(const PllParams& p, double theta0, double x_lo,
                                             double x_hi, const SolverConfig& cfg, double tol,
                                             const Thresholds& th = {});

}  // namespace pll
