#include "pll/classify.hpp"

#include "pll/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pll {

std::string_view to_string(OutcomeKind k) noexcept {
    switch (k) {
        case OutcomeKind::Lock: return "Lock";
        case OutcomeKind::RotationalCycle: return "RotationalCycle";
        case OutcomeKind::Undetermined: return "Undetermined";
    }
    return "?";
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hermite(double p0, double d0, double p1, double d1, double h, double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * p1 +
           (s3 - s2) * h * d1;
}

struct LockDistance {
    double theta = std::numeric_limits<double>::infinity();
    double x = std::numeric_limits<double>::infinity();
};

LockDistance nearest_lock(const Vec2& y, const std::vector<Equilibrium>& stable, const Thresholds& th) {
    LockDistance best;
    double best_score = std::numeric_limits<double>::infinity();
    for (const auto& e : stable) {
        const double dth = std::abs(wrap_angle(y[1] - e.theta_eq));
        const double dx = std::abs(y[0] - e.x_eq);
        const double score = std::max(dth / th.eps_theta, dx / th.eps_x);
        if (score < best_score) {
            best_score = score;
            best = {dth, dx};
        }
    }
    return best;
}

}  // namespace

int winding_direction(const Trajectory2& traj, std::size_t windings) {
    if (traj.samples.empty()) return 0;
    const double theta0 = traj.samples.front().y[1];
    const double target = kTwoPi * static_cast<double>(windings);
    for (const auto& s : traj.samples) {
        const double d = s.y[1] - theta0;
        if (std::abs(d) >= target) return d > 0 ? 1 : -1;
    }
    const double drift = traj.samples.back().y[1] - theta0;
    if (std::abs(drift) < kTwoPi) return 0;
    return drift > 0 ? 1 : -1;
}

std::vector<SectionCrossing> section_crossings(const Trajectory2& traj, const PllParams& p,
                                               int direction) {
    std::vector<SectionCrossing> out;
    if (traj.samples.size() < 2 || direction == 0) return out;
    const double d = direction > 0 ? 1.0 : -1.0;
    const double theta0 = traj.samples.front().y[1];
    std::size_t next = 1;
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i) {
        const auto& s0 = traj.samples[i];
        const auto& s1 = traj.samples[i + 1];
        const double u0 = d * (s0.y[1] - theta0);
        const double u1 = d * (s1.y[1] - theta0);
        if (u1 < kTwoPi * static_cast<double>(next)) continue;
        const Vec2 f0 = phase_rhs(s0.y, p);
        const Vec2 f1 = phase_rhs(s1.y, p);
        const double h = s1.t - s0.t;
        while (u1 >= kTwoPi * static_cast<double>(next)) {
            const double level = kTwoPi * static_cast<double>(next);
            if (u0 >= level) {
                // Earlier level overshot without a recorded crossing; skip it.
                ++next;
                continue;
            }
            double lo = 0.0;
            double hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double u = d * (hermite(s0.y[1], f0[1], s1.y[1], f1[1], h, mid) - theta0);
                (u >= level ? hi : lo) = mid;
            }
            const double sc = 0.5 * (lo + hi);
            out.push_back({s0.t + sc * h, hermite(s0.y[0], f0[0], s1.y[0], f1[0], h, sc)});
            ++next;
        }
    }
    return out;
}

Outcome classify(const Trajectory2& traj, const PllParams& p, const Thresholds& th) {
    if (traj.samples.size() < 2 || !(traj.duration() > 0.0)) {
        throw DomainError("classify needs a trajectory with at least two samples");
    }
    if (traj.duration() < th.min_hold) {
        throw DomainError("trajectory is shorter than the hold window");
    }

    std::vector<Equilibrium> stable;
    for (const auto& e : equilibria(p, 0, 1)) {
        if (e.stability == Stability::Stable) stable.push_back(e);
    }

    const double t_last = traj.samples.back().t;
    const double window = std::max(th.hold_fraction * traj.duration(), th.min_hold);
    const double t_hold = t_last - window;

    Outcome out;
    if (!stable.empty()) {
        // Walk back from the end while the state stays inside the lock box.
        double locked_since = t_last;
        bool held = true;
        for (auto it = traj.samples.rbegin(); it != traj.samples.rend(); ++it) {
            const LockDistance d = nearest_lock(it->y, stable, th);
            if (d.theta < th.eps_theta && d.x < th.eps_x) {
                locked_since = it->t;
            } else {
                if (it->t >= t_hold) held = false;
                break;
            }
        }
        if (held && locked_since <= t_hold) {
            const LockDistance final_d = nearest_lock(traj.samples.back().y, stable, th);
            out.kind = OutcomeKind::Lock;
            out.lock = LockEvidence{final_d.theta, final_d.x, t_last - locked_since};
            return out;
        }
    }

    const int dir = winding_direction(traj, th.min_windings);
    const double drift = dir * (traj.samples.back().y[1] - traj.samples.front().y[1]);
    const std::size_t windings = dir == 0 ? 0 : static_cast<std::size_t>(std::max(0.0, std::floor(drift / kTwoPi)));

    CycleEvidence ev;
    ev.direction = dir;
    ev.windings = windings;
    if (windings < th.min_windings) {
        out.reason = "no lock and only " + std::to_string(windings) + " windings";
        out.cycle = ev;
        return out;
    }

    const auto xs = section_crossings(traj, p, dir);
    if (xs.size() < 3) {
        out.reason = "too few section crossings";
        out.cycle = ev;
        return out;
    }
    const double first_step = std::abs(xs[1].x - xs[0].x);
    const double last_step = std::abs(xs.back().x - xs[xs.size() - 2].x);
    const std::size_t n_periods = std::min<std::size_t>(5, xs.size() - 1);
    ev.fixed_point = xs.back().x;
    ev.last_map_step = last_step;
    ev.period = (xs.back().t - xs[xs.size() - 1 - n_periods].t) / static_cast<double>(n_periods);
    out.cycle = ev;
    if (last_step < th.eps_map && last_step <= first_step) {
        out.kind = OutcomeKind::RotationalCycle;
        return out;
    }
    out.reason = "return map not converged (last step " + std::to_string(last_step) + ")";
    return out;
}

Outcome classify_initial(const PllParams& p, const PhaseState& init, const SolverConfig& cfg,
                         const Thresholds& th) {
    return classify(simulate_phase(p, init, cfg).trajectory, p, th);
}

}  // namespace pll
