#include "pll/loop_filter.hpp"

#include "pll/errors.hpp"

#include <cmath>

namespace pll {

LoopFilter make_lead_lag(double tau1, double tau2) {
    if (!std::isfinite(tau1) || !std::isfinite(tau2)) {
        throw DomainError("lead-lag time constants must be finite");
    }
    if (tau1 <= 0.0 || tau2 < 0.0) {
        throw DomainError("lead-lag filter needs tau1 > 0 and tau2 >= 0");
    }
    const double tau = tau1 + tau2;
    if (!(tau > 0.0)) {
        throw DomainError("lead-lag filter needs tau1 + tau2 > 0");
    }
    LoopFilter f;
    f.tau1 = tau1;
    f.tau2 = tau2;
    f.a = -1.0 / tau;
    f.b = 1.0 - tau2 / tau;
    f.c = 1.0 / tau;
    f.h = tau2 / tau;
    return f;
}

}  // namespace pll
