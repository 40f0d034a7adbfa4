#include "pll/return_map.hpp"

#include "pll/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pll {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Integrates from `start` until theta reaches `level` travelling in `direction`.
// Returns false if the level is not reached within cfg.t_end.
bool next_crossing(const PllParams& p, const Vec2& start, double level, int direction,
                   const SolverConfig& cfg, double& t_cross, Vec2& state) {
    const double d = direction > 0 ? 1.0 : -1.0;
    EventSpec<2> ev{[level, d](double, const Vec2& y) { return d * (y[1] - level); },
                    Direction::Rising, true};
    const auto res = simulate_phase(p, {start[0], start[1], 0.0}, cfg, {ev});
    if (!res.trajectory.terminated_by) return false;
    t_cross = res.crossings.back().t;
    state = res.crossings.back().state;
    return true;
}

}  // namespace

int detect_winding_direction(const PllParams& p, const PhaseState& init, const SolverConfig& cfg,
                             std::size_t windings) {
    const double span = kTwoPi * static_cast<double>(windings);
    const double theta0 = init.theta_delta;
    std::vector<EventSpec<2>> events{
        {[theta0, span](double, const Vec2& y) { return y[1] - theta0 - span; }, Direction::Rising, true},
        {[theta0, span](double, const Vec2& y) { return y[1] - theta0 + span; }, Direction::Falling, true},
    };
    const auto res = simulate_phase(p, init, cfg, events);
    if (res.trajectory.terminated_by) return *res.trajectory.terminated_by == 0 ? 1 : -1;
    const double drift = res.trajectory.back().y[1] - theta0;
    if (std::abs(drift) < kTwoPi) return 0;
    return drift > 0 ? 1 : -1;
}

ReturnMap return_map(const PllParams& p, double section_phase, double x0, std::size_t n_crossings,
                     const SolverConfig& cfg) {
    ReturnMap map;
    map.section_phase = section_phase;
    map.direction = detect_winding_direction(p, {x0, section_phase, 0.0}, cfg);
    if (map.direction == 0) {
        throw NoWinding("trajectory from x0=" + std::to_string(x0) + " does not wind");
    }
    Vec2 state{x0, section_phase};
    double t = 0.0;
    for (std::size_t k = 1; k <= n_crossings; ++k) {
        const double level = section_phase + map.direction * kTwoPi * static_cast<double>(k);
        double dt = 0.0;
        if (!next_crossing(p, state, level, map.direction, cfg, dt, state)) {
            throw NoWinding("trajectory from x0=" + std::to_string(x0) + " stopped winding after " +
                            std::to_string(k - 1) + " crossings");
        }
        t += dt;
        map.crossings.push_back({t, state[0]});
    }
    return map;
}

double first_return(const PllParams& p, double section_phase, double x0, int direction,
                    const SolverConfig& cfg) {
    double dt = 0.0;
    Vec2 state{};
    const double level = section_phase + (direction > 0 ? kTwoPi : -kTwoPi);
    if (!next_crossing(p, {x0, section_phase}, level, direction, cfg, dt, state)) {
        throw NoWinding("no return to the section from x0=" + std::to_string(x0));
    }
    return state[0];
}

double iterate_to_fixed_point(const PllParams& p, double section_phase, double x0,
                              const SolverConfig& cfg, double tol, std::size_t max_iter) {
    const int dir = detect_winding_direction(p, {x0, section_phase, 0.0}, cfg);
    if (dir == 0) throw NoWinding("trajectory does not wind");
    double x = x0;
    for (std::size_t i = 0; i < max_iter; ++i) {
        const double next = first_return(p, section_phase, x, dir, cfg);
        if (std::abs(next - x) < tol) return next;
        x = next;
    }
    throw NoWinding("return map did not settle within the iteration budget");
}

}  // namespace pll
