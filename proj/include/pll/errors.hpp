#pragma once

#include <stdexcept>
#include <string>

namespace pll {

/// Base for every error the library reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid construction arguments (negative time constants, bad tolerances, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A point handed to the linearization is not an equilibrium.
class NotAnEquilibrium : public Error {
public:
    using Error::Error;
};

/// Adaptive step size dropped below SolverConfig::min_step.
class StepUnderflow : public Error {
public:
    StepUnderflow(double t, double h)
        : Error("step underflow at t=" + std::to_string(t) + " (h=" + std::to_string(h) + ")"),
          time(t), step(h) {}
    double time;
    double step;
};

/// The integrated state became NaN or infinite.
class NonFiniteState : public Error {
public:
    explicit NonFiniteState(double t)
        : Error("non-finite state at t=" + std::to_string(t)), time(t) {}
    double time;
};

/// A return map was requested for a trajectory that stops winding.
class NoWinding : public Error {
public:
    using Error::Error;
};

/// Both ends of a bisection bracket classify to the same kind.
class SameOutcome : public Error {
public:
    using Error::Error;
};

/// Malformed input file (scenario, CSV).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace pll
