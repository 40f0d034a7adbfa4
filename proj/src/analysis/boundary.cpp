#include "pll/boundary.hpp"

#include "pll/errors.hpp"

#include <cmath>
#include <string>

namespace pll {

namespace {

OutcomeKind kind_at(const PllParams& p, double theta0, double x, const SolverConfig& cfg,
                    const Thresholds& th) {
    return classify_initial(p, {x, theta0, 0.0}, cfg, th).kind;
}

}  // namespace

BoundaryResult bisect_boundary(const PllParams& p, double theta0, double x_lo, double x_hi,
                               const SolverConfig& cfg, double tol, const Thresholds& th) {
    if (!(tol > 0.0)) throw DomainError("bisection tolerance must be positive");
    BoundaryBracket b{x_lo, x_hi, kind_at(p, theta0, x_lo, cfg, th), kind_at(p, theta0, x_hi, cfg, th)};
    if (b.lo_kind == b.hi_kind || b.lo_kind == OutcomeKind::Undetermined ||
        b.hi_kind == OutcomeKind::Undetermined) {
        throw SameOutcome("bracket endpoints classify as " + std::string(to_string(b.lo_kind)) +
                          " and " + std::string(to_string(b.hi_kind)));
    }

    SolverConfig longer = cfg;
    longer.t_end = 2.0 * cfg.t_end;

    BoundaryResult out;
    while (std::abs(b.hi - b.lo) >= tol) {
        out.history.push_back(b);
        const double mid = 0.5 * (b.lo + b.hi);
        OutcomeKind k = kind_at(p, theta0, mid, cfg, th);
        if (k == OutcomeKind::Undetermined) k = kind_at(p, theta0, mid, longer, th);
        if (k == b.lo_kind) {
            b.lo = mid;
        } else if (k == b.hi_kind) {
            b.hi = mid;
        } else {
            throw Error("bisection midpoint x=" + std::to_string(mid) + " stays Undetermined");
        }
    }
    out.bracket = b;
    out.x_boundary = 0.5 * (b.lo + b.hi);
    return out;
}

}  // namespace pll
