#include "pll/attractor.hpp"

#include "pll/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace pll {

std::string_view to_string(AttractorClass c) noexcept {
    return c == AttractorClass::Hidden ? "Hidden" : "SelfExcited";
}

bool reaches_cycle(const Outcome& probe, const Outcome& cycle, double period_rtol) {
    if (probe.kind != OutcomeKind::RotationalCycle || !probe.cycle || !cycle.cycle) return false;
    if (probe.cycle->direction != cycle.cycle->direction) return false;
    const double ref = cycle.cycle->period;
    return std::abs(probe.cycle->period - ref) <= period_rtol * std::abs(ref);
}

std::vector<PhaseState> probe_points(const Equilibrium& centre, const PllParams& p, std::size_t n,
                                     double radius, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double x_scale = model_scales(p).x;
    std::vector<PhaseState> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(unit(rng));
        const double phi = 2.0 * std::numbers::pi * unit(rng);
        pts.push_back({centre.x_eq + r * std::cos(phi) * x_scale, centre.theta_eq + r * std::sin(phi), 0.0});
    }
    return pts;
}

AttractorReport attractor_class(const Outcome& cycle, const std::vector<Equilibrium>& equilibria,
                                const PllParams& p, const BasinProbe& probe) {
    if (cycle.kind != OutcomeKind::RotationalCycle || !cycle.cycle) {
        throw DomainError("attractor_class needs a RotationalCycle outcome");
    }
    AttractorReport rep;
    SolverConfig longer = probe.cfg;
    longer.t_end *= 2.0;

    std::uint64_t stream = probe.seed;
    for (const auto& eq : equilibria) {
        if (eq.stability == Stability::Stable) continue;
        for (const auto& start : probe_points(eq, p, probe.n_probes, probe.radius, stream++)) {
            ++rep.probes;
            Outcome o;
            try {
                o = classify_initial(p, start, probe.cfg, probe.thresholds);
                if (o.kind == OutcomeKind::Undetermined) {
                    rep.budget_extended = true;
                    o = classify_initial(p, start, longer, probe.thresholds);
                }
            } catch (const Error& e) {
                o.kind = OutcomeKind::Undetermined;
                o.reason = e.what();
            }
            if (reaches_cycle(o, cycle, probe.period_rtol)) {
                ++rep.to_cycle;
            } else if (o.kind == OutcomeKind::Lock) {
                ++rep.locked;
            } else if (o.kind == OutcomeKind::Undetermined) {
                ++rep.inconclusive;
            } else {
                ++rep.other;
            }
        }
    }
    rep.inconclusive_flag = rep.inconclusive > 0;
    rep.classification = rep.to_cycle > 0 ? AttractorClass::SelfExcited : AttractorClass::Hidden;
    return rep;
}

}  // namespace pll
