#include "pll/portrait.hpp"

#include "pll/boundary.hpp"
#include "pll/errors.hpp"
#include "pll/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pll {

Portrait portrait(const PllParams& p, const std::vector<PhaseState>& inits, const SolverConfig& cfg,
                  const PortraitOptions& opt) {
    Portrait out;
    if (inits.empty()) return out;
    out.entries.resize(inits.size());
    parallel_for(inits.size(), resolve_threads(opt.threads), [&](std::size_t i) {
        PortraitEntry& e = out.entries[i];
        e.init = inits[i];
        try {
            e.trajectory = simulate_phase(p, inits[i], cfg).trajectory;
            e.outcome = classify(*e.trajectory, p, opt.thresholds);
        } catch (const Error& err) {
            e.error = err.what();
        }
    });
    if (!opt.overlays) return out;

    out.equilibria = equilibria(p, 0, 1);

    for (const auto& e : out.entries) {
        if (e.outcome && e.outcome->kind == OutcomeKind::RotationalCycle) {
            out.cycle_fixed_point = e.outcome->cycle->fixed_point;
            out.cycle_section = e.init.theta_delta;
            break;
        }
    }

    // Narrowest Lock/RotationalCycle pair at a common theta(0).
    std::vector<std::size_t> order(out.entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ia = out.entries[a].init;
        const auto& ib = out.entries[b].init;
        return ia.theta_delta != ib.theta_delta ? ia.theta_delta < ib.theta_delta : ia.x < ib.x;
    });
    const auto definite = [](const PortraitEntry& e) {
        return e.outcome && e.outcome->kind != OutcomeKind::Undetermined;
    };
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        const auto& a = out.entries[order[k]];
        const auto& b = out.entries[order[k + 1]];
        if (a.init.theta_delta != b.init.theta_delta || !definite(a) || !definite(b)) continue;
        if (a.outcome->kind == b.outcome->kind) continue;
        const double w = b.init.x - a.init.x;
        if (!best || w < out.entries[best->second].init.x - out.entries[best->first].init.x) {
            best = {order[k], order[k + 1]};
        }
    }
    if (best) {
        const auto& a = out.entries[best->first];
        const auto& b = out.entries[best->second];
        try {
            out.boundary = bisect_boundary(p, a.init.theta_delta, a.init.x, b.init.x, cfg,
                                           opt.boundary_tol, opt.thresholds)
                               .x_boundary;
            out.boundary_section = a.init.theta_delta;
        } catch (const Error&) {
            out.boundary.reset();
        }
    }
    return out;
}

}  // namespace pll
