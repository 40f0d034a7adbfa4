// pllsim: command-line front end for the two-phase PLL toolkit.
//
// Exit codes: 0 Lock (or success), 10 RotationalCycle, 11 Undetermined,
// 2 usage or parse error, 3 no equilibria, 1 internal fault.

#include "pll/attractor.hpp"
#include "pll/boundary.hpp"
#include "pll/errors.hpp"
#include "pll/portrait.hpp"
#include "pll/scenario.hpp"
#include "pll/svg.hpp"
#include "pll/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>

namespace {

using namespace pll;
using json = nlohmann::ordered_json;

constexpr int kExitLock = 0;
constexpr int kExitCycle = 10;
constexpr int kExitUndetermined = 11;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoEquilibria = 3;

struct UsageError : Error {
    using Error::Error;
};

int exit_code(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::Lock: return kExitLock;
        case OutcomeKind::RotationalCycle: return kExitCycle;
        case OutcomeKind::Undetermined: return kExitUndetermined;
    }
    return kExitInternal;
}

// Scenario file plus command-line overrides shared by every experiment command.
struct ScenarioArgs {
    std::string path;
    std::optional<double> x0;
    std::optional<double> theta0;
    std::optional<double> omega1;
    std::optional<double> omega_free;
    std::optional<double> omega_delta;
    std::optional<double> gain;
    std::optional<double> t_end;
    std::optional<std::string> method;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<double> step;
    std::optional<double> max_step;
    bool hz = false;

    void attach(CLI::App& app) {
        app.add_option("scenario", path, "Scenario file (default: built-in canonical experiment)");
        app.add_option("--x0", x0, "Initial filter state");
        app.add_option("--theta0", theta0, "Initial phase difference, rad");
        app.add_option("--omega1", omega1, "Reference frequency (rad/s, Hz with --hz)");
        app.add_option("--omega-free", omega_free, "VCO free-running frequency");
        app.add_option("--omega-delta", omega_delta, "Detuning omega1 - omega_free");
        app.add_flag("--hz", hz, "Frequency overrides are in Hz");
        app.add_option("--gain", gain, "VCO gain L");
        app.add_option("--t-end", t_end, "Integration time, s");
        app.add_option("--method", method, "euler | rk4 | rk45");
        app.add_option("--rel-tol", rel_tol, "Relative tolerance (rk45)");
        app.add_option("--abs-tol", abs_tol, "Absolute tolerance (rk45)");
        app.add_option("--step", step, "Fixed step (euler, rk4), s");
        app.add_option("--max-step", max_step, "Largest adaptive step, s");
    }

    Scenario load() const {
        Scenario s = path.empty() ? canonical_scenario() : load_scenario(path);
        const double unit = hz ? 2.0 * std::numbers::pi : 1.0;
        if (omega_free && omega_delta) throw UsageError("give --omega-free or --omega-delta, not both");
        const double w1 = omega1 ? *omega1 * unit : s.params.omega1;
        double wf = s.params.omega_free;
        if (omega_free) {
            wf = *omega_free * unit;
        } else if (omega_delta) {
            wf = w1 - *omega_delta * unit;
        } else if (omega1) {
            wf = w1 - s.params.omega_delta;
        }
        s.params = PllParams::make(s.params.filter, gain.value_or(s.params.vco_gain), w1, wf);
        if (x0) s.init.x = *x0;
        if (theta0) s.init.theta_delta = *theta0;
        if (method) s.solver.method = parse_method(*method);
        if (t_end) s.solver.t_end = *t_end;
        if (rel_tol) s.solver.rel_tol = *rel_tol;
        if (abs_tol) s.solver.abs_tol = {*abs_tol};
        if (step) s.solver.fixed_step = *step;
        if (max_step) s.solver.max_step = *max_step;
        s.solver.validate();
        return s;
    }
};

json equilibria_json(const PllParams& p, const std::vector<Equilibrium>& eqs) {
    json j;
    j["params"] = {{"tau1", p.filter.tau1},     {"tau2", p.filter.tau2},
                   {"vco_gain", p.vco_gain},    {"omega1", p.omega1},
                   {"omega_free", p.omega_free}, {"omega_delta", p.omega_delta}};
    j["equilibria"] = json::array();
    for (const auto& e : eqs) {
        json je;
        je["k"] = e.k;
        je["theta_eq"] = e.theta_eq;
        je["x_eq"] = e.x_eq;
        je["stability"] = std::string(to_string(e.stability));
        je["eigenvalues"] = json::array();
        for (const auto& ev : e.eigenvalues) je["eigenvalues"].push_back({ev.real(), ev.imag()});
        j["equilibria"].push_back(je);
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << text;
    if (!os) throw Error("write to '" + path + "' failed");
}

void print_outcome(const Outcome& o) {
    std::cout << "outcome: " << to_string(o.kind);
    if (o.kind == OutcomeKind::Lock && o.lock) {
        std::cout << " theta_distance=" << o.lock->theta_distance << " x_distance=" << o.lock->x_distance
                  << " hold=" << o.lock->hold_duration;
    } else if (o.kind == OutcomeKind::RotationalCycle && o.cycle) {
        std::cout << " windings=" << o.cycle->windings << " direction=" << o.cycle->direction
                  << " fixed_point=" << format_double(o.cycle->fixed_point)
                  << " period=" << o.cycle->period;
    } else {
        std::cout << " reason=\"" << o.reason << "\"";
    }
    std::cout << '\n';
}

int cmd_equilibria(const ScenarioArgs& args, int k_min, int k_max, const std::string& json_path) {
    const Scenario s = args.load();
    const auto eqs = equilibria(s.params, k_min, k_max);
    if (!json_path.empty()) write_text(json_path, equilibria_json(s.params, eqs).dump(2) + "\n");
    if (eqs.empty()) {
        std::cout << "no equilibria: |2 omega_delta / L| = "
                  << std::abs(2.0 * s.params.omega_delta / s.params.vco_gain) << " > 1\n";
        return kExitNoEquilibria;
    }
    std::cout << std::left << std::setw(4) << "k" << std::setw(14) << "theta_eq" << std::setw(14)
              << "x_eq" << std::setw(20) << "stability"
              << "eigenvalues\n";
    for (const auto& e : eqs) {
        char row[256];
        std::snprintf(row, sizeof row, "%-4d%-14.6f%-14.6f%-20s(%.6g%+.6gi) (%.6g%+.6gi)\n", e.k,
                      e.theta_eq, e.x_eq, std::string(to_string(e.stability)).c_str(),
                      e.eigenvalues[0].real(), e.eigenvalues[0].imag(), e.eigenvalues[1].real(),
                      e.eigenvalues[1].imag());
        std::cout << row;
    }
    return 0;
}

int cmd_simulate(const ScenarioArgs& args, const std::string& out, const std::string& model_flag) {
    Scenario s = args.load();
    if (model_flag == "phase") {
        s.model = ModelKind::Phase;
    } else if (model_flag == "circuit") {
        s.model = ModelKind::Circuit;
    } else if (!model_flag.empty()) {
        throw UsageError("--model must be phase or circuit");
    }

    Outcome o;
    if (s.model == ModelKind::Phase) {
        const auto res = simulate_phase(s.params, s.init, s.solver);
        if (!out.empty()) write_csv_file(out, res.trajectory, CsvModel::Phase);
        o = classify(res.trajectory, s.params, s.thresholds);
    } else {
        const auto res = simulate_circuit(s.params, to_circuit_state(s.init, s.params), s.solver);
        if (!out.empty()) write_csv_file(out, res.trajectory, CsvModel::Circuit);
        o = classify(to_phase_trajectory(res.trajectory, s.params), s.params, s.thresholds);
    }
    std::cout << "model: " << to_string(s.model) << "  init: x=" << s.init.x
              << " theta=" << s.init.theta_delta << "  solver: " << s.solver.label() << '\n';
    print_outcome(o);
    return exit_code(o.kind);
}

int cmd_sweep(const ScenarioArgs& args, const std::string& grid_spec, const std::string& out) {
    const Scenario s = args.load();
    const auto grid = parse_grid(grid_spec, s.solver.t_end);
    const SweepReport r = tolerance_sweep(s.params, s.init, grid, s.solver, s.thresholds);
    const std::string text = to_json(r).dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text(out, text);
    }
    std::cerr << "oracle (" << r.oracle.label() << "): " << to_string(r.oracle_outcome.kind) << '\n';
    std::cerr << "divergent configs: " << r.divergent.size() << " of " << r.grid.size() << '\n';
    for (std::size_t i : r.divergent) {
        std::cerr << "  [" << i << "] " << r.grid[i].label() << " -> " << to_string(r.outcomes[i].kind)
                  << '\n';
    }
    return 0;
}

int cmd_bisect(const ScenarioArgs& args, double lo, double hi, double tol) {
    const Scenario s = args.load();
    const BoundaryResult b =
        bisect_boundary(s.params, s.init.theta_delta, lo, hi, s.solver, tol, s.thresholds);
    std::cout << "boundary: " << format_double(b.x_boundary) << '\n';
    std::cout << "bracket: [" << format_double(b.bracket.lo) << ", " << format_double(b.bracket.hi)
              << "] " << to_string(b.bracket.lo_kind) << " | " << to_string(b.bracket.hi_kind) << '\n';
    std::cout << "iterations: " << b.history.size() << '\n';
    return 0;
}

int cmd_render(const std::vector<std::string>& traj_paths, const std::string& out,
               const std::string& scenario_path, std::optional<double> boundary, double boundary_theta,
               const std::string& kind) {
    if (traj_paths.empty()) throw UsageError("render needs at least one --traj file");
    if (out.empty()) throw UsageError("render needs --out");
    PlotKind plot = PlotKind::Portrait;
    if (kind == "g") {
        plot = PlotKind::FilterOutput;
    } else if (kind != "portrait") {
        throw UsageError("--kind must be portrait or g");
    }
    std::vector<Trajectory2> trajs;
    std::optional<Scenario> scenario;
    if (!scenario_path.empty()) scenario = load_scenario(scenario_path);
    for (const auto& path : traj_paths) {
        CsvTrajectory t = read_csv_file(path);
        if (t.model == CsvModel::Circuit && plot == PlotKind::Portrait) {
            if (!scenario) throw UsageError("circuit-model CSV needs --scenario to recover theta_delta");
            t.trajectory = to_phase_trajectory(t.trajectory, scenario->params);
        }
        trajs.push_back(std::move(t.trajectory));
    }
    PortraitMarkers markers;
    if (scenario) markers.equilibria = equilibria(scenario->params, 0, 1);
    if (boundary) markers.boundary = Vec2{*boundary, boundary_theta};
    write_text(out, render_svg(trajs, plot, markers));
    return 0;
}

int cmd_attractor(const ScenarioArgs& args, std::uint64_t seed, std::size_t probes, double radius) {
    const Scenario s = args.load();
    const Outcome cycle = classify_initial(s.params, s.init, s.solver, s.thresholds);
    if (cycle.kind != OutcomeKind::RotationalCycle) {
        throw UsageError("initial state classifies as " + std::string(to_string(cycle.kind)) +
                         "; attractor needs one that reaches a rotational cycle (try --x0 0.005)");
    }
    BasinProbe bp;
    bp.n_probes = probes;
    bp.radius = radius;
    bp.seed = seed;
    bp.cfg = s.solver;
    bp.thresholds = s.thresholds;
    const auto eqs = equilibria(s.params, 0, 1);
    const AttractorReport r = attractor_class(cycle, eqs, s.params, bp);
    json j;
    j["cycle"] = to_json(cycle);
    j["classification"] = std::string(to_string(r.classification));
    j["probes"] = r.probes;
    j["to_cycle"] = r.to_cycle;
    j["locked"] = r.locked;
    j["other"] = r.other;
    j["inconclusive"] = r.inconclusive;
    j["budget_extended"] = r.budget_extended;
    j["inconclusive_flag"] = r.inconclusive_flag;
    j["probe_seed"] = seed;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_portrait(const ScenarioArgs& args, const std::vector<double>& xs, const std::string& outdir) {
    const Scenario s = args.load();
    std::vector<PhaseState> inits;
    for (double x : xs) inits.push_back({x, s.init.theta_delta, 0.0});
    PortraitOptions opt;
    opt.thresholds = s.thresholds;
    const Portrait pr = portrait(s.params, inits, s.solver, opt);
    if (!outdir.empty()) std::filesystem::create_directories(outdir);
    std::vector<Trajectory2> trajs;
    for (std::size_t i = 0; i < pr.entries.size(); ++i) {
        const auto& e = pr.entries[i];
        std::cout << "x0=" << format_double(e.init.x) << "  ";
        if (e.error) {
            std::cout << "error: " << *e.error << '\n';
            continue;
        }
        std::cout << to_string(e.outcome->kind) << '\n';
        trajs.push_back(*e.trajectory);
        if (!outdir.empty()) {
            write_csv_file((std::filesystem::path(outdir) / ("traj_" + std::to_string(i) + ".csv")).string(),
                           *e.trajectory);
        }
    }
    if (pr.cycle_fixed_point) std::cout << "cycle fixed point: " << format_double(*pr.cycle_fixed_point) << '\n';
    if (pr.boundary) std::cout << "boundary: " << format_double(*pr.boundary) << '\n';
    if (!outdir.empty() && !trajs.empty()) {
        PortraitMarkers m;
        m.equilibria = pr.equilibria;
        if (pr.boundary) m.boundary = Vec2{*pr.boundary, pr.boundary_section};
        if (pr.cycle_fixed_point) m.cycle_point = Vec2{*pr.cycle_fixed_point, pr.cycle_section};
        write_text((std::filesystem::path(outdir) / "portrait.svg").string(),
                   render_svg(trajs, PlotKind::Portrait, m));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-phase PLL simulation and analysis"};
    app.require_subcommand(1);

    ScenarioArgs eq_args, sim_args, sweep_args, bisect_args, attr_args, portrait_args;

    auto* eq = app.add_subcommand("equilibria", "List equilibria and their stability");
    eq_args.attach(*eq);
    int k_min = 0;
    int k_max = 1;
    std::string eq_json;
    eq->add_option("--k-min", k_min, "First branch index");
    eq->add_option("--k-max", k_max, "Last branch index");
    eq->add_option("--json", eq_json, "Also write the table as JSON");

    auto* sim = app.add_subcommand("simulate", "Integrate one trajectory and classify it");
    sim_args.attach(*sim);
    std::string sim_out;
    std::string sim_model;
    sim->add_option("--out", sim_out, "Trajectory CSV path");
    sim->add_option("--model", sim_model, "phase | circuit (overrides the scenario)");

    auto* sweep = app.add_subcommand("sweep", "Classify one initial state under a grid of solver configs");
    sweep_args.attach(*sweep);
    std::string grid = "canonical";
    std::string sweep_out;
    sweep->add_option("--grid", grid, "canonical, or entries like rk4:1e-3,rk45:1e-2");
    sweep->add_option("--out", sweep_out, "Report JSON path (default stdout)");

    auto* bisect = app.add_subcommand("bisect", "Locate the lock/cycle boundary in x(0)");
    bisect_args.attach(*bisect);
    double lo = 0.005;
    double hi = 0.00555;
    double tol = 1e-6;
    bisect->add_option("--lo", lo, "Lower x(0)");
    bisect->add_option("--hi", hi, "Upper x(0)");
    bisect->add_option("--tol", tol, "Bracket width to stop at");

    auto* render = app.add_subcommand("render", "Draw trajectory CSVs as SVG");
    std::vector<std::string> traj_paths;
    std::string render_out;
    std::string render_scenario;
    std::optional<double> boundary;
    double boundary_theta = 0.0;
    std::string render_kind = "portrait";
    render->add_option("--traj", traj_paths, "Trajectory CSV files");
    render->add_option("--out", render_out, "SVG path");
    render->add_option("--scenario", render_scenario, "Scenario whose equilibria are marked");
    render->add_option("--boundary", boundary, "Mark the boundary point x");
    render->add_option("--boundary-theta", boundary_theta, "theta of the boundary marker");
    render->add_option("--kind", render_kind, "portrait | g");

    auto* attr = app.add_subcommand("attractor", "Probe whether the reached cycle is hidden");
    attr_args.attach(*attr);
    std::uint64_t probe_seed = 0;
    std::size_t probes = 64;
    double radius = 1e-2;
    attr->add_option("--probe-seed", probe_seed, "Seed for probe placement");
    attr->add_option("--probes", probes, "Probes per unstable equilibrium");
    attr->add_option("--radius", radius, "Probe radius, scaled units");

    auto* port = app.add_subcommand("portrait", "Integrate a family of x(0) values at theta(0)");
    portrait_args.attach(*port);
    std::vector<double> port_xs{0.0, 0.005, 0.00555};
    std::string port_dir;
    port->add_option("--xs", port_xs, "Initial filter states");
    port->add_option("--outdir", port_dir, "Directory for CSVs and portrait.svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*eq) return cmd_equilibria(eq_args, k_min, k_max, eq_json);
        if (*sim) return cmd_simulate(sim_args, sim_out, sim_model);
        if (*sweep) return cmd_sweep(sweep_args, grid, sweep_out);
        if (*bisect) return cmd_bisect(bisect_args, lo, hi, tol);
        if (*render) {
            return cmd_render(traj_paths, render_out, render_scenario, boundary, boundary_theta,
                              render_kind);
        }
        if (*attr) return cmd_attractor(attr_args, probe_seed, probes, radius);
        if (*port) return cmd_portrait(portrait_args, port_xs, port_dir);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SameOutcome& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NoWinding& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}
