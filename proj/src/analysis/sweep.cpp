#include "pll/sweep.hpp"

#include "pll/errors.hpp"
#include "pll/parallel.hpp"

#include <algorithm>

#include <sstream>

namespace pll {

bool resolves_at_least(const SolverConfig& oracle, const SolverConfig& cfg) noexcept {
    if (!oracle.is_adaptive()) return false;
    if (!cfg.is_adaptive()) return true;
    const std::size_t n = std::max(oracle.abs_tol.size(), cfg.abs_tol.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (oracle.abs_tol_at(i) > cfg.abs_tol_at(i)) return false;
    }
    return oracle.rel_tol <= cfg.rel_tol && oracle.max_step <= cfg.max_step;
}

namespace {

Outcome failed_cell(const std::string& what) {
    Outcome o;
    o.kind = OutcomeKind::Undetermined;
    o.reason = "integration failed: " + what;
    return o;
}

}  // namespace

SweepReport tolerance_sweep(const PllParams& p, const PhaseState& init,
                            const std::vector<SolverConfig>& grid, const SolverConfig& oracle,
                            const Thresholds& th, std::size_t threads) {
    for (const auto& cfg : grid) {
        if (!resolves_at_least(oracle, cfg)) {
            throw DomainError("oracle (" + oracle.label() + ") is coarser than grid entry " + cfg.label());
        }
    }
    SweepReport r;
    r.init = init;
    r.grid = grid;
    r.oracle = oracle;
    r.outcomes.resize(grid.size());
    r.errors.resize(grid.size());

    // Slot grid.size() is the oracle.
    std::vector<Outcome> results(grid.size() + 1);
    std::vector<std::optional<std::string>> errors(grid.size() + 1);
    parallel_for(grid.size() + 1, resolve_threads(threads), [&](std::size_t i) {
        const SolverConfig& cfg = i < grid.size() ? grid[i] : oracle;
        try {
            results[i] = classify_initial(p, init, cfg, th);
        } catch (const Error& e) {
            errors[i] = e.what();
            results[i] = failed_cell(e.what());
        }
    });
    if (errors.back()) throw Error("oracle integration failed: " + *errors.back());
    r.oracle_outcome = results.back();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        r.outcomes[i] = results[i];
        r.errors[i] = errors[i];
        if (results[i].kind != r.oracle_outcome.kind) r.divergent.push_back(i);
    }
    return r;
}

std::vector<SolverConfig> canonical_grid(double t_end) {
    std::vector<SolverConfig> g;
    g.push_back(SolverConfig::fixed(Method::Euler, 2e-2, t_end));
    g.push_back(SolverConfig::fixed(Method::Euler, 1e-3, t_end));
    g.push_back(SolverConfig::fixed(Method::RK4, 1e-2, t_end));
    g.push_back(SolverConfig::fixed(Method::RK4, 1e-3, t_end));
    g.push_back(SolverConfig::fixed(Method::RK4, 1e-4, t_end));
    for (double rtol : {1e-1, 3e-2, 1e-2, 1e-3, 1e-4, 1e-6, 1e-9}) {
        g.push_back(SolverConfig::adaptive(rtol, rtol * 1e-3, t_end));
    }
    return g;
}

std::vector<SolverConfig> parse_grid(const std::string& spec, double t_end) {
    if (spec == "canonical") return canonical_grid(t_end);
    std::vector<SolverConfig> out;
    std::stringstream entries(spec);
    std::string entry;
    while (std::getline(entries, entry, ',')) {
        std::vector<std::string> parts;
        std::stringstream fields(entry);
        std::string f;
        while (std::getline(fields, f, ':')) {
            const auto first = f.find_first_not_of(" \t");
            const auto last = f.find_last_not_of(" \t");
            parts.push_back(first == std::string::npos ? "" : f.substr(first, last - first + 1));
        }
        if (parts.size() < 2) throw DomainError("grid entry '" + entry + "' needs method:value");
        try {
            const Method m = parse_method(parts[0]);
            if (m != Method::AdaptiveRK45) {
                if (parts.size() != 2) throw DomainError("fixed-step entry takes one value");
                out.push_back(SolverConfig::fixed(m, std::stod(parts[1]), t_end));
            } else {
                if (parts.size() > 4) throw DomainError("rk45 entry takes at most three values");
                const double rtol = std::stod(parts[1]);
                const double atol = parts.size() > 2 ? std::stod(parts[2]) : rtol * 1e-3;
                SolverConfig c = SolverConfig::adaptive(rtol, atol, t_end);
                if (parts.size() > 3) c.max_step = std::stod(parts[3]);
                out.push_back(c);
            }
        } catch (const std::logic_error&) {
            throw DomainError("bad number in grid entry '" + entry + "'");
        }
        out.back().validate();
    }
    if (out.empty()) throw DomainError("empty grid");
    return out;
}

nlohmann::ordered_json to_json(const SolverConfig& cfg) {
    nlohmann::ordered_json j;
    j["method"] = std::string(to_string(cfg.method));
    if (cfg.is_adaptive()) {
        j["rel_tol"] = cfg.rel_tol;
        j["abs_tol"] = cfg.abs_tol;
        j["max_step"] = cfg.max_step;
        j["min_step"] = cfg.min_step;
    } else {
        j["fixed_step"] = cfg.fixed_step;
    }
    j["t_end"] = cfg.t_end;
    return j;
}

nlohmann::ordered_json to_json(const Outcome& o) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(to_string(o.kind));
    nlohmann::ordered_json ev = nlohmann::ordered_json::object();
    if (o.kind == OutcomeKind::Lock && o.lock) {
        ev["theta_distance"] = o.lock->theta_distance;
        ev["x_distance"] = o.lock->x_distance;
        ev["hold_duration"] = o.lock->hold_duration;
    } else if (o.cycle) {
        ev["direction"] = o.cycle->direction;
        ev["windings"] = o.cycle->windings;
        if (o.kind == OutcomeKind::RotationalCycle) {
            ev["fixed_point"] = o.cycle->fixed_point;
            ev["last_map_step"] = o.cycle->last_map_step;
            ev["period"] = o.cycle->period;
        }
    }
    if (o.kind == OutcomeKind::Undetermined) ev["reason"] = o.reason;
    j["evidence"] = ev;
    return j;
}

nlohmann::ordered_json to_json(const SweepReport& r) {
    nlohmann::ordered_json j;
    j["init"] = {{"x", r.init.x}, {"theta", r.init.theta_delta}};
    j["grid"] = nlohmann::ordered_json::array();
    for (const auto& c : r.grid) j["grid"].push_back(to_json(c));
    j["outcomes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.outcomes.size(); ++i) {
        auto o = to_json(r.outcomes[i]);
        if (r.errors[i]) o["error"] = *r.errors[i];
        j["outcomes"].push_back(o);
    }
    j["oracle"] = {{"config", to_json(r.oracle)}, {"outcome", to_json(r.oracle_outcome)}};
    j["divergent"] = r.divergent;
    return j;
}

}  // namespace pll
