#pragma once

// Explicit one-step ODE integrators (forward Euler, classic RK4, adaptive
// Dormand-Prince 5(4)) with sign-change event location.
//
// Events are located by bisection in time. The state at an interior time is
// obtained by re-taking a single step of the active method from the start of
// the accepted step, so event states carry the integrator's own accuracy.

#include "pll/errors.hpp"
#include "pll/solver_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace pll {

template <std::size_t N>
using StateN = std::array<double, N>;

template <std::size_t N>
using RhsFn = std::function<StateN<N>(double, const StateN<N>&)>;

/// Scalar function of (t, state): event functions and observed outputs.
template <std::size_t N>
using ScalarFn = std::function<double(double, const StateN<N>&)>;

enum class Direction { Rising, Falling, Both };

template <std::size_t N>
struct EventSpec {
    ScalarFn<N> function;
    Direction direction = Direction::Both;
    bool terminal = false;
};

template <std::size_t N>
struct EventCrossing {
    std::size_t event = 0;   ///< index into the events list
    double t = 0.0;
    StateN<N> state{};
    Direction direction = Direction::Rising;  ///< actual crossing direction
};

struct SolverStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

template <std::size_t N>
struct Sample {
    double t = 0.0;
    StateN<N> y{};
    double g = 0.0;
};

template <std::size_t N>
struct Trajectory {
    std::vector<Sample<N>> samples;
    SolverStats stats;
    std::optional<std::size_t> terminated_by;  ///< index of the terminal event, if any

    [[nodiscard]] const Sample<N>& back() const { return samples.back(); }
    [[nodiscard]] double duration() const {
        return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
    }
};

template <std::size_t N>
struct IntegrationResult {
    Trajectory<N> trajectory;
    std::vector<EventCrossing<N>> crossings;
};

namespace detail {

template <std::size_t N>
bool all_finite(const StateN<N>& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

template <std::size_t N>
StateN<N> axpy(const StateN<N>& y, double h, const StateN<N>& k) {
    StateN<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = y[i] + h * k[i];
    return r;
}

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    // 5th-order weights (also row 7 of A, FSAL).
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b5th - b4th
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <std::size_t N>
class Stepper {
public:
    Stepper(const RhsFn<N>& rhs, const SolverConfig& cfg, SolverStats& stats)
        : rhs_(rhs), cfg_(cfg), stats_(stats) {}

    StateN<N> eval(double t, const StateN<N>& y) {
        ++stats_.rhs_evals;
        return rhs_(t, y);
    }

    /// One step of size h from (t, y) whose derivative is k1. For RK45 the
    /// error estimate and the end-point derivative are written to err / k_end.
    StateN<N> step(double t, const StateN<N>& y, const StateN<N>& k1, double h,
                   StateN<N>* err = nullptr, StateN<N>* k_end = nullptr) {
        switch (cfg_.method) {
            case Method::Euler:
                return axpy(y, h, k1);
            case Method::RK4: {
                const StateN<N> k2 = eval(t + 0.5 * h, axpy(y, 0.5 * h, k1));
                const StateN<N> k3 = eval(t + 0.5 * h, axpy(y, 0.5 * h, k2));
                const StateN<N> k4 = eval(t + h, axpy(y, h, k3));
                StateN<N> r;
                for (std::size_t i = 0; i < N; ++i) {
                    r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
                return r;
            }
            case Method::AdaptiveRK45:
                return dopri(t, y, k1, h, err, k_end);
        }
        return y;
    }

private:
    StateN<N> dopri(double t, const StateN<N>& y, const StateN<N>& k1, double h, StateN<N>* err,
                    StateN<N>* k_end) {
        using T = DormandPrince;
        StateN<N> tmp;
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * T::a21 * k1[i];
        const StateN<N> k2 = eval(t + T::c2 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (T::a31 * k1[i] + T::a32 * k2[i]);
        const StateN<N> k3 = eval(t + T::c3 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) {
            tmp[i] = y[i] + h * (T::a41 * k1[i] + T::a42 * k2[i] + T::a43 * k3[i]);
        }
        const StateN<N> k4 = eval(t + T::c4 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) {
            tmp[i] = y[i] + h * (T::a51 * k1[i] + T::a52 * k2[i] + T::a53 * k3[i] + T::a54 * k4[i]);
        }
        const StateN<N> k5 = eval(t + T::c5 * h, tmp);
        for (std::size_t i = 0; i < N; ++i) {
            tmp[i] = y[i] + h * (T::a61 * k1[i] + T::a62 * k2[i] + T::a63 * k3[i] +
                                 T::a64 * k4[i] + T::a65 * k5[i]);
        }
        const StateN<N> k6 = eval(t + h, tmp);
        StateN<N> y5;
        for (std::size_t i = 0; i < N; ++i) {
            y5[i] = y[i] + h * (T::b1 * k1[i] + T::b3 * k3[i] + T::b4 * k4[i] + T::b5 * k5[i] +
                                T::b6 * k6[i]);
        }
        if (err != nullptr) {
            const StateN<N> k7 = eval(t + h, y5);
            for (std::size_t i = 0; i < N; ++i) {
                (*err)[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] +
                                 T::e6 * k6[i] + T::e7 * k7[i]);
            }
            if (k_end != nullptr) *k_end = k7;
        }
        return y5;
    }

    const RhsFn<N>& rhs_;
    const SolverConfig& cfg_;
    SolverStats& stats_;
};

inline bool sign_change(double v0, double v1, Direction d) {
    const bool rising = v0 < 0.0 && v1 >= 0.0;
    const bool falling = v0 > 0.0 && v1 <= 0.0;
    switch (d) {
        case Direction::Rising: return rising;
        case Direction::Falling: return falling;
        case Direction::Both: return rising || falling;
    }
    return false;
}

}  // namespace detail

/// Integrates y' = rhs(t, y) over [t0, t0 + cfg.t_end].
///
/// Euler and RK4 advance by exactly cfg.fixed_step, with the last step
/// clamped to land on the end time. AdaptiveRK45 accepts a step when
/// max_i |err_i| / (abs_tol_i + rel_tol * max(|y_i|, |y_new_i|)) <= 1.
/// Crossings of the event functions are located to 1e-12 * t_end; a terminal
/// event ends the trajectory at its crossing. `output` fills Sample::g.
///
/// Throws StepUnderflow, NonFiniteState, or DomainError (invalid config/init).
template <std::size_t N>
IntegrationResult<N> integrate(const RhsFn<N>& rhs, const StateN<N>& init, const SolverConfig& cfg,
                               const std::vector<EventSpec<N>>& events = {},
                               const ScalarFn<N>& output = {}, double t0 = 0.0) {
    cfg.validate();
    if (cfg.abs_tol.size() != 1 && cfg.abs_tol.size() != N) {
        throw DomainError("abs_tol must have 1 or N entries");
    }
    if (!detail::all_finite(init) || !std::isfinite(t0)) {
        throw DomainError("initial state must be finite");
    }

    IntegrationResult<N> result;
    Trajectory<N>& traj = result.trajectory;
    detail::Stepper<N> stepper(rhs, cfg, traj.stats);
    const auto observe = [&](double t, const StateN<N>& y) { return output ? output(t, y) : 0.0; };

    const double t_stop = t0 + cfg.t_end;
    const double t_event_tol = 1e-12 * cfg.t_end;

    double t = t0;
    StateN<N> y = init;
    StateN<N> k1 = stepper.eval(t, y);
    traj.samples.push_back({t, y, observe(t, y)});

    std::vector<double> ev_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) ev_prev[e] = events[e].function(t, y);

    // Scans the accepted step [t, t_new] for event crossings. Returns true if a
    // terminal event fired; (t_new, y_new) are then moved to the crossing.
    const auto handle_events = [&](double h_used, double& t_new, StateN<N>& y_new) -> bool {
        if (events.empty()) return false;
        std::vector<EventCrossing<N>> found;
        std::vector<double> ev_new(events.size());
        for (std::size_t e = 0; e < events.size(); ++e) {
            ev_new[e] = events[e].function(t_new, y_new);
            if (!detail::sign_change(ev_prev[e], ev_new[e], events[e].direction)) continue;
            const bool rising = ev_prev[e] < 0.0;
            double lo = 0.0;
            double hi = h_used;
            double v_lo = ev_prev[e];
            double v_hi = ev_new[e];
            for (int it = 0; it < 200 && hi - lo > t_event_tol; ++it) {
                const double mid = 0.5 * (lo + hi);
                const StateN<N> ym = stepper.step(t, y, k1, mid);
                const double vm = events[e].function(t + mid, ym);
                const bool crossed = rising ? vm >= 0.0 : vm <= 0.0;
                if (crossed) {
                    hi = mid;
                    v_hi = vm;
                } else {
                    lo = mid;
                    v_lo = vm;
                }
            }
            double root = hi;
            if (v_hi != v_lo) {
                root = lo + (hi - lo) * (v_lo / (v_lo - v_hi));
                root = std::clamp(root, lo, hi);
            }
            const StateN<N> yc = root == h_used ? y_new : stepper.step(t, y, k1, root);
            found.push_back({e, t + root, yc, rising ? Direction::Rising : Direction::Falling});
        }
        std::stable_sort(found.begin(), found.end(),
                         [](const auto& l, const auto& r) { return l.t < r.t; });
        for (const auto& c : found) {
            result.crossings.push_back(c);
            if (events[c.event].terminal) {
                traj.terminated_by = c.event;
                t_new = c.t;
                y_new = c.state;
                return true;
            }
        }
        ev_prev = std::move(ev_new);
        return false;
    };

    if (!cfg.is_adaptive()) {
        const double h = cfg.fixed_step;
        for (std::size_t n = 1; t < t_stop; ++n) {
            double t_new = t0 + static_cast<double>(n) * h;
            double h_used = h;
            if (t_stop - t_new <= 1e-9 * h) {
                t_new = t_stop;
                h_used = t_stop - t;
            }
            StateN<N> y_new = stepper.step(t, y, k1, h_used);
            if (!detail::all_finite(y_new)) throw NonFiniteState(t_new);
            ++traj.stats.accepted;
            const bool stop = handle_events(h_used, t_new, y_new);
            t = t_new;
            y = y_new;
            traj.samples.push_back({t, y, observe(t, y)});
            if (stop) break;
            k1 = stepper.eval(t, y);
        }
        return result;
    }

    double h = std::min(cfg.max_step, 1e-2 * cfg.t_end);
    bool last_rejected = false;
    while (t < t_stop) {
        bool last_step = false;
        if (t + 1.01 * h >= t_stop) {
            h = t_stop - t;
            last_step = true;
        }
        StateN<N> err{};
        StateN<N> k_end{};
        StateN<N> y_new = stepper.step(t, y, k1, h, &err, &k_end);
        if (!detail::all_finite(y_new)) throw NonFiniteState(t + h);

        double err_norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double scale = cfg.abs_tol_at(i) + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err_norm = std::max(err_norm, std::abs(err[i]) / scale);
        }

        double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);

        if (err_norm <= 1.0) {
            ++traj.stats.accepted;
            double t_new = last_step ? t_stop : t + h;
            const double h_used = h;
            const bool stop = handle_events(h_used, t_new, y_new);
            t = t_new;
            y = y_new;
            traj.samples.push_back({t, y, observe(t, y)});
            if (stop) break;
            k1 = k_end;
            if (last_rejected) factor = std::min(factor, 1.0);
            last_rejected = false;
            h = std::min(cfg.max_step, h * factor);
        } else {
            ++traj.stats.rejected;
            last_rejected = true;
            h = h * std::min(factor, 1.0);
            if (h < cfg.min_step) throw StepUnderflow(t, h);
        }
        if (h < cfg.min_step && !(t + h >= t_stop)) throw StepUnderflow(t, h);
    }
    return result;
}

}  // namespace pll
