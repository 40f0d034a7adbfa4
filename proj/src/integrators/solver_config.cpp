#include "pll/solver_config.hpp"

#include "pll/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace pll {

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::Euler: return "euler";
        case Method::RK4: return "rk4";
        case Method::AdaptiveRK45: return "rk45";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "euler") return Method::Euler;
    if (lower == "rk4") return Method::RK4;
    if (lower == "rk45" || lower == "adaptiverk45" || lower == "dopri5") return Method::AdaptiveRK45;
    throw DomainError("unknown integration method '" + lower + "'");
}

void SolverConfig::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be > 0");
    if (!is_adaptive()) {
        if (!(fixed_step > 0.0) || !std::isfinite(fixed_step)) {
            throw DomainError("fixed_step must be > 0 for fixed-step methods");
        }
        return;
    }
    if (!(min_step > 0.0) || !(min_step <= max_step) || !std::isfinite(max_step)) {
        throw DomainError("adaptive stepping needs 0 < min_step <= max_step");
    }
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be > 0");
    if (abs_tol.empty()) throw DomainError("abs_tol must not be empty");
    for (double a : abs_tol) {
        if (!(a > 0.0)) throw DomainError("abs_tol entries must be > 0");
    }
}

std::string SolverConfig::label() const {
    std::ostringstream os;
    os << to_string(method);
    if (is_adaptive()) {
        os << " rtol=" << rel_tol << " atol=" << abs_tol.front();
    } else {
        os << " h=" << fixed_step;
    }
    return os.str();
}

SolverConfig SolverConfig::fixed(Method m, double step, double t_end) {
    SolverConfig c;
    c.method = m;
    c.fixed_step = step;
    c.t_end = t_end;
    return c;
}

SolverConfig SolverConfig::adaptive(double rel_tol, double abs_tol, double t_end, double max_step) {
    SolverConfig c;
    c.method = Method::AdaptiveRK45;
    c.rel_tol = rel_tol;
    c.abs_tol = {abs_tol};
    c.t_end = t_end;
    c.max_step = max_step;
    return c;
}

SolverConfig oracle_config(double t_end) { return SolverConfig::adaptive(1e-9, 1e-12, t_end); }

SolverConfig coarse_config(double t_end) { return SolverConfig::fixed(Method::RK4, 1e-3, t_end); }

}  // namespace pll
