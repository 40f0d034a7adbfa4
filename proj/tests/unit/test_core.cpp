#include "pll/equilibria.hpp"
#include "pll/errors.hpp"
#include "pll/loop_filter.hpp"
#include "pll/model.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

using namespace pll;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("lead-lag coefficients", "[core]") {
    const LoopFilter f = make_lead_lag(0.0448, 0.0185);
    const long double sum = 0.0448L + 0.0185L;
    CHECK_THAT(f.a, WithinRel(static_cast<double>(-1.0L / sum), 1e-14));
    CHECK_THAT(f.b, WithinRel(static_cast<double>(1.0L - 0.0185L / sum), 1e-14));
    CHECK_THAT(f.c, WithinRel(static_cast<double>(1.0L / sum), 1e-14));
    CHECK_THAT(f.h, WithinRel(static_cast<double>(0.0185L / sum), 1e-14));
    CHECK_THAT(f.a, WithinAbs(-15.7978, 1e-4));
    CHECK_THAT(f.b, WithinAbs(0.70774, 1e-5));
    CHECK_THAT(f.h, WithinAbs(0.29226, 1e-5));
}

TEST_CASE("pure lag and unit dc gain", "[core][property]") {
    const LoopFilter lag = make_lead_lag(1.0, 0.0);
    CHECK(lag.a == -1.0);
    CHECK(lag.b == 1.0);
    CHECK(lag.c == 1.0);
    CHECK(lag.h == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau(1e-4, 1.0);
    CHECK_THAT(make_lead_lag(0.0448, 0.0185).dc_gain(), WithinAbs(1.0, 1e-12));
    for (int i = 0; i < 50; ++i) {
        CHECK_THAT(make_lead_lag(tau(rng), tau(rng)).dc_gain(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("lead-lag rejects bad time constants", "[core]") {
    CHECK_THROWS_AS(make_lead_lag(-0.1, 0.01), DomainError);
    CHECK_THROWS_AS(make_lead_lag(0.1, -0.01), DomainError);
    CHECK_THROWS_AS(make_lead_lag(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(make_lead_lag(std::nan(""), 0.01), DomainError);
}

TEST_CASE("params derive the detuning", "[core]") {
    const PllParams p = canonical_params();
    CHECK(p.omega_delta == p.omega1 - p.omega_free);
    CHECK_THAT(p.omega_delta, WithinAbs(178.9, 1e-9));
    CHECK(p.with_detuning(0.0).omega_delta == 0.0);
    CHECK_THROWS_AS(PllParams::make(p.filter, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(PllParams::make(p.filter, -5.0, 1.0, 1.0), DomainError);
}

TEST_CASE("phase rhs examples", "[core]") {
    const PllParams p = canonical_params();
    const Vec2 origin = phase_rhs(Vec2{0.0, 0.0}, p);
    CHECK(origin[0] == 0.0);
    CHECK(origin[1] == p.omega_delta);

    const Vec2 near_eq = phase_rhs(Vec2{0.016, 0.7975}, p);
    CHECK(std::abs(near_eq[0]) < 1e-3);
    // x is 3e-5 off x_eq and L*c amplifies that; measured against L/2
    CHECK(std::abs(near_eq[1]) / (p.vco_gain / 2.0) < 1e-3);

    // sin(0) = 0, so only the linear terms survive
    const long double tsum = 0.0448L + 0.0185L;
    const long double dx = -0.1318L / tsum;
    const long double dth = (10000.0L - (10000.0L - 178.9L)) - 500.0L * 0.1318L / tsum;
    const Vec2 r = phase_rhs(Vec2{0.1318, 0.0}, p);
    CHECK_THAT(r[0], WithinRel(static_cast<double>(dx), 1e-13));
    CHECK_THAT(r[1], WithinRel(static_cast<double>(dth), 1e-12));
    CHECK_THAT(r[0], WithinAbs(-2.0821484992101107, 1e-12));
    CHECK_THAT(r[1], WithinAbs(-862.1742496050558, 1e-9));
}

TEST_CASE("circuit rhs examples", "[core]") {
    const PllParams p = canonical_params();
    const Vec2 at_rest = circuit_rhs(0.0, Vec2{0.0, 0.0}, p);
    CHECK(circuit_detector(0.0, 0.0, p) == 0.0);
    CHECK(at_rest[1] == p.omega_free);

    CHECK_THAT(circuit_detector(0.0, -kPi / 2, p), WithinAbs(0.5, 1e-16));
    const Vec2 quarter = circuit_rhs(0.0, Vec2{0.0, -kPi / 2}, p);
    CHECK_THAT(quarter[1], WithinAbs(9821.1 + 500.0 * p.filter.h * 0.5, 1e-9));
    CHECK_THAT(quarter[1], WithinAbs(9894.1647709, 1e-6));
    CHECK_THAT(quarter[0], WithinAbs(p.filter.b * 0.5, 1e-16));
}

TEST_CASE("circuit and phase models agree under theta_delta = omega1 t - theta2", "[core][property]") {
    const PllParams p = canonical_params();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ut(0.0, 10.0);
    std::uniform_real_distribution<double> ux(-0.05, 0.05);
    std::uniform_real_distribution<double> uth(-1e5, 1e5);
    const LoopFilter& f = p.filter;
    for (int i = 0; i < 1000; ++i) {
        const double t = ut(rng);
        const double x = ux(rng);
        const double theta2 = uth(rng);
        const double theta_delta = p.omega1 * t - theta2;
        const Vec2 c = circuit_rhs(t, Vec2{x, theta2}, p);
        const Vec2 ph = phase_rhs(Vec2{x, theta_delta}, p);
        // the trig identity is exact; what remains is rounding of the phase
        // argument and of the sums, a few ulps of the magnitudes involved
        const double arg = 1.0 + std::abs(p.omega1 * t) + std::abs(theta2);
        const double tol_x = 4.0 * kEps * (std::abs(f.a * x) + 0.5 * f.b * arg);
        const double tol_th = 4.0 * kEps *
                              (std::abs(p.omega1) + std::abs(p.omega_free) +
                               p.vco_gain * std::abs(f.c * x) + 0.5 * p.vco_gain * f.h * arg);
        CHECK(std::abs(c[0] - ph[0]) <= tol_x);
        CHECK(std::abs((p.omega1 - c[1]) - ph[1]) <= tol_th);
    }
}

TEST_CASE("phase rhs is 2 pi periodic and odd", "[core][property]") {
    const PllParams p = canonical_params();
    PllParams mirrored = p;
    mirrored.omega_delta = -p.omega_delta;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-0.05, 0.05);
    std::uniform_real_distribution<double> uth(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = ux(rng);
        const double th = uth(rng);
        const Vec2 r = phase_rhs(Vec2{x, th}, p);
        const Vec2 shifted = phase_rhs(Vec2{x, th + 2.0 * kPi}, p);
        // th + 2 pi is itself rounded, so sin sees an argument a few ulps away
        const double dsin = 4.0 * kEps * (std::abs(th) + 2.0 * kPi);
        CHECK(std::abs(r[0] - shifted[0]) <= 0.5 * p.filter.b * dsin + 4.0 * kEps * std::abs(r[0]));
        CHECK(std::abs(r[1] - shifted[1]) <=
              0.5 * p.filter.h * p.vco_gain * dsin + 4.0 * kEps * (std::abs(r[1]) + p.omega_delta));

        const Vec2 odd = phase_rhs(Vec2{-x, -th}, mirrored);
        CHECK(odd[0] == -r[0]);
        CHECK(odd[1] == -r[1]);
    }
}

TEST_CASE("analytic jacobian matches central differences", "[core][property]") {
    const PllParams p = canonical_params();
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ux(-0.05, 0.05);
    std::uniform_real_distribution<double> uth(-10.0, 10.0);
    const double step = 1e-6;
    for (int n = 0; n < 100; ++n) {
        const Vec2 s{ux(rng), uth(rng)};
        const Mat2 j = phase_jacobian(s, p);
        Mat2 fd{};
        for (int col = 0; col < 2; ++col) {
            Vec2 plus = s;
            Vec2 minus = s;
            plus[col] += step;
            minus[col] -= step;
            const Vec2 rp = phase_rhs(plus, p);
            const Vec2 rm = phase_rhs(minus, p);
            for (int row = 0; row < 2; ++row) fd[row][col] = (rp[row] - rm[row]) / (plus[col] - minus[col]);
        }
        for (int row = 0; row < 2; ++row) {
            const double scale = std::max(std::abs(j[row][0]), std::abs(j[row][1]));
            for (int col = 0; col < 2; ++col) {
                CHECK(std::abs(j[row][col] - fd[row][col]) <= 1e-5 * scale);
            }
        }
    }
}

TEST_CASE("canonical equilibria", "[core]") {
    const PllParams p = canonical_params();
    const auto eqs = equilibria(p, 0, 1);
    REQUIRE(eqs.size() == 2);

    const double theta0 = std::asin(2.0 * 178.9 / 500.0);
    CHECK_THAT(eqs[0].theta_eq, WithinAbs(theta0, 1e-12));
    CHECK_THAT(eqs[0].theta_eq, WithinAbs(0.7975, 5e-4));
    CHECK_THAT(eqs[0].x_eq, WithinAbs(0.016, 5e-4));
    // closed form (tau1/2) sin theta against the dx/dt = 0 route
    CHECK_THAT(eqs[0].x_eq, WithinRel(lock_filter_state(p, eqs[0].theta_eq), 1e-12));
    CHECK_THAT(eqs[0].x_eq, WithinRel(0.0448 / 2.0 * (2.0 * 178.9 / 500.0), 1e-9));
    CHECK(eqs[0].stability == Stability::Stable);

    CHECK_THAT(eqs[1].theta_eq, WithinAbs(kPi - theta0, 1e-12));
    CHECK_THAT(eqs[1].x_eq, WithinAbs(eqs[0].x_eq, 1e-12));
    CHECK(eqs[1].stability == Stability::Saddle);
}

TEST_CASE("equilibria degenerate cases", "[core]") {
    const PllParams p = canonical_params();
    const auto zero = equilibria(p.with_detuning(0.0), 0, 0);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].theta_eq == 0.0);
    CHECK(zero[0].x_eq == 0.0);
    CHECK(zero[0].stability == Stability::Stable);

    CHECK(equilibria(p.with_detuning(300.0), 0, 1).empty());
    CHECK(equilibria(p, 1, 0).empty());
}

TEST_CASE("equilibria have tiny residuals and consistent stability", "[core][property]") {
    for (double detuning : {-240.0, -100.0, 0.0, 50.0, 178.9, 249.0}) {
        const PllParams p = canonical_params().with_detuning(detuning);
        for (const auto& e : equilibria(p, -3, 3)) {
            CHECK(scaled_residual(e.vec(), p) < 1e-10);
            const double re0 = e.eigenvalues[0].real();
            const double re1 = e.eigenvalues[1].real();
            if (e.stability == Stability::Stable) {
                CHECK((re0 < 0.0 && re1 < 0.0));
            }
            if (e.stability == Stability::Saddle) {
                CHECK(e.eigenvalues[0].imag() == 0.0);
                CHECK((re0 > 0.0 && re1 < 0.0));
            }
            // branches alternate between node/focus and saddle
            CHECK((std::abs(e.k) % 2 == 0) == (e.stability == Stability::Stable));
        }
    }
}

TEST_CASE("stability from the jacobian", "[core]") {
    const PllParams p = canonical_params();
    const auto eqs = equilibria(p, 0, 1);
    const Mat2 j = phase_jacobian(eqs[0].vec(), p);
    const double tr = j[0][0] + j[1][1];
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    CHECK(tr < 0.0);
    CHECK(det > 0.0);
    const StabilityResult s = classify_stability(eqs[0].vec(), p);
    CHECK(s.stability == Stability::Stable);
    CHECK_THAT(s.eigenvalues[0].real() + s.eigenvalues[1].real(), WithinRel(tr, 1e-12));
    CHECK_THAT(std::real(s.eigenvalues[0] * s.eigenvalues[1]), WithinRel(det, 1e-12));

    const StabilityResult saddle = classify_stability(eqs[1].vec(), p);
    CHECK(saddle.stability == Stability::Saddle);
    CHECK(p.vco_gain / 2.0 * p.filter.c * std::cos(eqs[1].theta_eq) < 0.0);

    CHECK(classify_stability(Vec2{0.0, 0.0}, p.with_detuning(0.0)).stability == Stability::Stable);
}

TEST_CASE("stability rejects points that are not equilibria", "[core]") {
    const PllParams p = canonical_params();
    const auto eqs = equilibria(p, 1, 1);
    CHECK_THROWS_AS(classify_stability(Vec2{-eqs[0].x_eq, eqs[0].theta_eq}, p), NotAnEquilibrium);
    CHECK_THROWS_AS(classify_stability(Vec2{0.1318, 0.0}, p), NotAnEquilibrium);
}

TEST_CASE("wrap angle", "[core]") {
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK_THAT(wrap_angle(3.0 * kPi / 2), WithinAbs(-kPi / 2, 1e-15));
    CHECK_THAT(wrap_angle(-20.0 * kPi + 0.25), WithinAbs(0.25, 1e-13));
    CHECK(wrap_angle(kPi) == -kPi);
}
