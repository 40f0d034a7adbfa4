#include "pll/errors.hpp"
#include "pll/scenario.hpp"
#include "pll/simulate.hpp"
#include "pll/svg.hpp"

#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

using namespace pll;
using Catch::Matchers::WithinAbs;

namespace {

Scenario parse(const std::string& text) {
    std::istringstream is(text);
    return parse_scenario(is);
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "pll_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(PLLSIM_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), {}};
}

std::vector<Trajectory2> golden_trajectories() {
    const PllParams p = canonical_params();
    std::vector<Trajectory2> out;
    for (double x0 : {0.0, 0.005, 0.00555}) out.push_back(simulate_phase(p, {x0, 0.0, 0.0}, oracle_config()).trajectory);
    return out;
}

}  // namespace

TEST_CASE("bundled scenario matches the built-in one", "[cli]") {
    const Scenario file = load_scenario(std::string(SCENARIO_DIR) + "/canonical.scenario");
    const Scenario builtin = canonical_scenario();
    CHECK(file.params.filter.tau1 == builtin.params.filter.tau1);
    CHECK(file.params.filter.tau2 == builtin.params.filter.tau2);
    CHECK(file.params.vco_gain == builtin.params.vco_gain);
    CHECK(file.params.omega1 == builtin.params.omega1);
    CHECK(file.params.omega_delta == builtin.params.omega_delta);
    CHECK(file.init.x == 0.1318);
    CHECK(file.init.theta_delta == 0.0);
    CHECK(file.solver.method == Method::AdaptiveRK45);
    CHECK(file.solver.rel_tol == 1e-9);
    CHECK(file.solver.t_end == 5.0);
    CHECK(file.model == ModelKind::Phase);
}

TEST_CASE("scenario parsing", "[cli]") {
    const Scenario s = parse(
        "model = circuit ; trailing comment\n"
        "[filter]\ntau1 = 0.05\ntau2 = 0\n"
        "[loop]\nvco_gain = 400\nomega1_hz = 1000\nomega_delta_hz = 10\n"
        "[init]\nx = 0.01\ntheta2 = 0.25\n"
        "[solver]\nmethod = rk4\nfixed_step = 1e-4\nt_end = 2\n"
        "[classify]\neps_theta = 0.1\nmin_windings = 5\n");
    CHECK(s.model == ModelKind::Circuit);
    CHECK(s.params.filter.h == 0.0);
    CHECK_THAT(s.params.omega1, WithinAbs(2000.0 * std::numbers::pi, 1e-9));
    CHECK_THAT(s.params.omega_delta, WithinAbs(20.0 * std::numbers::pi, 1e-9));
    CHECK(s.init.theta_delta == -0.25);
    CHECK(s.solver.method == Method::RK4);
    CHECK(s.solver.fixed_step == 1e-4);
    CHECK(s.thresholds.eps_theta == 0.1);
    CHECK(s.thresholds.min_windings == 5);

    const Scenario defaults = parse("[init]\nx = 0.005\n");
    CHECK(defaults.params.omega_delta == canonical_params().omega_delta);
    CHECK(defaults.init.x == 0.005);
}

TEST_CASE("scenario errors", "[cli]") {
    CHECK_THROWS_AS(parse("[filter]\ntau3 = 1\n"), ParseError);
    CHECK_THROWS_AS(parse("[engine]\nx = 1\n"), ParseError);
    CHECK_THROWS_AS(parse("[filter]\ntau1 = fast\n"), ParseError);
    CHECK_THROWS_AS(parse("[filter\ntau1 = 1\n"), ParseError);
    CHECK_THROWS_AS(parse("model = analog\n"), ParseError);
    CHECK_THROWS_AS(parse("[filter]\ntau1 = -1\n"), DomainError);
    CHECK_THROWS_AS(parse("[solver]\nmethod = rk4\nfixed_step = 0\n"), DomainError);
    CHECK_THROWS_AS(parse("[init]\ntheta = 1\ntheta2 = 1\n"), ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.scenario"), ParseError);
}

TEST_CASE("svg structure", "[cli]") {
    const auto trajs = golden_trajectories();
    PortraitMarkers m;
    m.equilibria = equilibria(canonical_params(), 0, 1);
    const std::string svg = render_svg(trajs, PlotKind::Portrait, m);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
    CHECK(count(svg, "<polyline") == 3);
    CHECK(count(svg, "class=\"equilibrium") == 2);
    CHECK(count(svg, "equilibrium stable") == 1);

    CHECK(count(render_svg(trajs, PlotKind::FilterOutput), "<polyline") == 3);
    CHECK_THROWS_AS(render_svg({}), DomainError);
}

TEST_CASE("svg output is byte-stable", "[cli][property]") {
    const auto trajs = golden_trajectories();
    PortraitMarkers m;
    m.equilibria = equilibria(canonical_params(), 0, 1);
    m.boundary = Vec2{0.005536, 0.0};
    CHECK(render_svg(trajs, PlotKind::Portrait, m) == render_svg(golden_trajectories(), PlotKind::Portrait, m));
}

TEST_CASE("simulate csv re-parses to the same trajectory", "[cli][property]") {
    const auto dir = scratch();
    const auto csv = dir / "roundtrip.csv";
    REQUIRE(run("simulate --t-end 0.5 --out " + csv.string()) == 0);
    const Trajectory2 mem = simulate_phase(canonical_params(), canonical_scenario().init, oracle_config(0.5)).trajectory;
    const Trajectory2 file = read_csv_file(csv.string()).trajectory;
    REQUIRE(file.samples.size() == mem.samples.size());
    bool equal = true;
    for (std::size_t i = 0; i < mem.samples.size(); ++i) {
        equal &= file.samples[i].t == mem.samples[i].t && file.samples[i].y == mem.samples[i].y &&
                 file.samples[i].g == mem.samples[i].g;
    }
    CHECK(equal);
}

TEST_CASE("cli exit codes", "[cli]") {
    const std::string canonical = std::string(SCENARIO_DIR) + "/canonical.scenario";
    CHECK(run("equilibria " + canonical) == 0);
    CHECK(run("equilibria --omega-delta 0") == 0);
    CHECK(run("equilibria --omega-delta 300") == 3);
    CHECK(run("simulate " + canonical) == 0);
    CHECK(run("simulate --x0 0.00555") == 0);
    CHECK(run("simulate --x0 0.005") == 10);
    CHECK(run("simulate --x0 0.005 --model circuit --t-end 3") == 10);
    CHECK(run("simulate --t-end 0.05") == 11);
    CHECK(run("simulate --method rk45 --rel-tol 0.1 --abs-tol 1e-4") == 11);
    CHECK(run("bisect --tol 1e-5") == 0);
    CHECK(run("bisect --lo 0.006 --hi 0.2") == 2);
    CHECK(run("simulate --no-such-flag") == 2);
    CHECK(run("") == 2);
    CHECK(run("simulate /nonexistent.scenario") == 2);
    CHECK(run("simulate --method rk4 --step -1") == 2);
    CHECK(run("render --out /dev/null") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("cli sweep and render", "[cli]") {
    const auto dir = scratch();
    const auto report = dir / "sweep.json";
    REQUIRE(run("sweep --out " + report.string()) == 0);
    const std::string json = slurp(report);
    CHECK(json.find("\"divergent\"") != std::string::npos);
    CHECK(json.find("\"oracle\"") != std::string::npos);
    REQUIRE(run("sweep --out " + (dir / "sweep2.json").string()) == 0);
    CHECK(slurp(dir / "sweep2.json") == json);

    std::string trajs;
    for (const char* x0 : {"0", "0.005", "0.00555"}) {
        const auto path = dir / (std::string("traj_") + x0 + ".csv");
        run(std::string("simulate --x0 ") + x0 + " --out " + path.string());
        trajs += " --traj " + path.string();
    }
    const std::string scenario = " --scenario " + std::string(SCENARIO_DIR) + "/canonical.scenario";
    REQUIRE(run("render" + trajs + scenario + " --out " + (dir / "a.svg").string()) == 0);
    REQUIRE(run("render" + trajs + scenario + " --out " + (dir / "b.svg").string()) == 0);
    const std::string svg = slurp(dir / "a.svg");
    CHECK(svg == slurp(dir / "b.svg"));
    CHECK(count(svg, "<polyline") == 3);
    CHECK(count(svg, "class=\"equilibrium") == 2);

    std::ofstream(dir / "bad.csv") << "t,x,theta,g\n0,1,2\n";
    CHECK(run("render --traj " + (dir / "bad.csv").string() + " --out " + (dir / "c.svg").string()) == 2);
    CHECK(run("render --traj " + (dir / "missing.csv").string() + " --out " + (dir / "c.svg").string()) == 2);
}

TEST_CASE("attractor command is seeded", "[cli]") {
    CHECK(run("attractor --x0 0.005 --probes 8") == 0);
    CHECK(run("attractor --probes 8") == 2);
}
