#include "pll/scenario.hpp"

#include "pll/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace pll {

std::string_view to_string(ModelKind m) noexcept {
    return m == ModelKind::Phase ? "phase" : "circuit";
}

Scenario canonical_scenario() {
    Scenario s;
    s.params = canonical_params();
    s.init = {0.1318, 0.0, 0.0};
    s.solver = oracle_config();
    return s;
}

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"", {"model"}},
        {"filter", {"tau1", "tau2"}},
        {"loop", {"vco_gain", "omega1", "omega1_hz", "omega_free", "omega_free_hz", "omega_delta",
                  "omega_delta_hz"}},
        {"init", {"x", "theta", "theta2"}},
        {"solver", {"method", "fixed_step", "rel_tol", "abs_tol", "max_step", "min_step", "t_end"}},
        {"classify", {"eps_theta", "eps_x", "hold_fraction", "min_hold", "min_windings", "eps_map"}},
    };
    return keys;
}

double to_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("key '" + key + "': '" + text + "' is not a number");
    }
}

class Section {
public:
    Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

    std::optional<double> number(const std::string& key) const {
        if (tree_ == nullptr) return std::nullopt;
        const auto v = tree_->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return to_number(name_ + "." + key, *v);
    }

    // Value in rad/s from either `key` or `key_hz`.
    std::optional<double> frequency(const std::string& key) const {
        const auto rad = number(key);
        const auto hz = number(key + "_hz");
        if (rad && hz) throw ParseError("both " + key + " and " + key + "_hz given");
        if (hz) return 2.0 * std::numbers::pi * *hz;
        return rad;
    }

    std::optional<std::string> text(const std::string& key) const {
        if (tree_ == nullptr) return std::nullopt;
        const auto v = tree_->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return *v;
    }

private:
    const pt::ptree* tree_;
    std::string name_;
};

}  // namespace

Scenario parse_scenario(std::istream& is) {
    // inline comments are not part of the INI grammar the reader accepts
    std::ostringstream cleaned;
    for (std::string line; std::getline(is, line);) {
        const auto cut = line.find_first_of(";#");
        if (cut != std::string::npos) line.erase(cut);
        cleaned << line << '\n';
    }
    std::istringstream text(cleaned.str());
    pt::ptree tree;
    try {
        pt::read_ini(text, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParseError(std::string("scenario: ") + e.what());
    }

    for (const auto& [name, child] : tree) {
        const bool is_section = !child.empty() || (child.data().empty() && known_keys().contains(name));
        const std::string section = is_section ? name : "";
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) throw ParseError("unknown section [" + name + "]");
        if (!is_section) {
            if (!it->second.contains(name)) throw ParseError("unknown key '" + name + "'");
            continue;
        }
        for (const auto& [key, unused] : child) {
            if (!it->second.contains(key)) throw ParseError("unknown key '" + name + "." + key + "'");
        }
    }

    const auto section = [&](const std::string& name) {
        const auto c = tree.get_child_optional(name);
        return Section(c ? &*c : nullptr, name);
    };

    Scenario s = canonical_scenario();
    const Scenario base = s;

    if (const auto m = tree.get_optional<std::string>("model")) {
        if (*m == "phase") {
            s.model = ModelKind::Phase;
        } else if (*m == "circuit") {
            s.model = ModelKind::Circuit;
        } else {
            throw ParseError("model must be 'phase' or 'circuit', got '" + *m + "'");
        }
    }

    const Section filter = section("filter");
    const LoopFilter lf = make_lead_lag(filter.number("tau1").value_or(base.params.filter.tau1),
                                        filter.number("tau2").value_or(base.params.filter.tau2));

    const Section loop = section("loop");
    const double gain = loop.number("vco_gain").value_or(base.params.vco_gain);
    const double omega1 = loop.frequency("omega1").value_or(base.params.omega1);
    const auto omega_free = loop.frequency("omega_free");
    const auto omega_delta = loop.frequency("omega_delta");
    if (omega_free && omega_delta) throw ParseError("give omega_free or omega_delta, not both");
    double free = base.params.omega_free;
    if (omega_free) {
        free = *omega_free;
    } else if (omega_delta) {
        free = omega1 - *omega_delta;
    }
    s.params = PllParams::make(lf, gain, omega1, free);

    const Section init = section("init");
    s.init.x = init.number("x").value_or(base.init.x);
    const auto theta = init.number("theta");
    const auto theta2 = init.number("theta2");
    if (theta && theta2) throw ParseError("give init.theta or init.theta2, not both");
    s.init.theta_delta = theta2 ? -*theta2 : theta.value_or(base.init.theta_delta);

    const Section solver = section("solver");
    if (const auto m = solver.text("method")) s.solver.method = parse_method(*m);
    s.solver.fixed_step = solver.number("fixed_step").value_or(s.solver.fixed_step);
    s.solver.rel_tol = solver.number("rel_tol").value_or(s.solver.rel_tol);
    if (const auto a = solver.number("abs_tol")) s.solver.abs_tol = {*a};
    s.solver.max_step = solver.number("max_step").value_or(s.solver.max_step);
    s.solver.min_step = solver.number("min_step").value_or(s.solver.min_step);
    s.solver.t_end = solver.number("t_end").value_or(s.solver.t_end);
    s.solver.validate();

    const Section cls = section("classify");
    s.thresholds.eps_theta = cls.number("eps_theta").value_or(s.thresholds.eps_theta);
    s.thresholds.eps_x = cls.number("eps_x").value_or(s.thresholds.eps_x);
    s.thresholds.hold_fraction = cls.number("hold_fraction").value_or(s.thresholds.hold_fraction);
    s.thresholds.min_hold = cls.number("min_hold").value_or(s.thresholds.min_hold);
    s.thresholds.eps_map = cls.number("eps_map").value_or(s.thresholds.eps_map);
    if (const auto w = cls.number("min_windings")) {
        if (*w < 0) throw DomainError("min_windings must be >= 0");
        s.thresholds.min_windings = static_cast<std::size_t>(*w);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open scenario '" + path + "'");
    return parse_scenario(is);
}

}  // namespace pll
