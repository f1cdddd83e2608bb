#include <doctest.h>

#include <cmath>

#include "starkfid/rng.hpp"
#include "starkfid/sequence.hpp"

#include "oracles.hpp"

using namespace starkfid;

TEST_CASE("voltage_at holds boundaries and interpolates ramps") {
    const VoltageTimeline tl = preset_constant(95.0, 1e-6, 1e-8);
    CHECK(tl.voltage_at(-1.0) == 0.0);
    CHECK(tl.voltage_at(0.0) == 0.0);
    CHECK(tl.voltage_at(1e-6 + 1e-8) == 95.0);
    CHECK(tl.voltage_at(1.0) == 95.0);
    // mid-ramp
    CHECK(tl.voltage_at(1e-6 + 5e-9) == doctest::Approx(47.5).epsilon(1e-12));
}

TEST_CASE("ramp from +95 to -95 passes through zero at its midpoint") {
    const VoltageTimeline tl = preset_invert_at(95.0, 0.0, 1e-6, 1e-8);
    CHECK(tl.voltage_at(1e-6) == 0.0);
    CHECK(tl.voltage_at(1e-6 - 5e-9) == 95.0);
    CHECK(tl.voltage_at(1e-6 + 5e-9) == -95.0);
}

TEST_CASE("constant segments evaluate bit-exactly") {
    const VoltageTimeline tl = preset_constant(-37.25, 0.0, 1e-8);
    for (double t : {1e-7, 3.3e-7, 0.5, 12.0}) CHECK(tl.voltage_at(t) == -37.25);
}

TEST_CASE("integral of a constant is V0*tau") {
    const VoltageTimeline tl = preset_constant(12.5, 0.0, 0.0);
    CHECK(tl.integral(0.0, 4e-6) == doctest::Approx(12.5 * 4e-6).epsilon(1e-15));
    CHECK_THROWS_AS(tl.integral(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("antisymmetric sequence integrates to zero with instantaneous switch") {
    const double tau = 1e-6;
    const VoltageTimeline tl = preset_invert_at(95.0, 0.0, tau, 0.0);
    CHECK(tl.integral(0.0, 2.0 * tau) == 0.0);
}

TEST_CASE("integral is additive over subintervals") {
    const VoltageTimeline tl = preset_invert_then_off(80.0, 1e-7, 9e-7, 1e-8);
    const double T = 3e-6;
    const double whole = tl.integral(0.0, T);
    const double split = tl.integral(0.0, 0.5 * T) + tl.integral(0.5 * T, T);
    CHECK(whole == doctest::Approx(split).epsilon(1e-15));
}

TEST_CASE("preset_constant with v = 0 is identically zero") {
    const VoltageTimeline tl = preset_constant(0.0, 0.0, 1e-8);
    for (double t : {0.0, 1e-8, 1e-6, 1.0}) CHECK(tl.voltage_at(t) == 0.0);
    CHECK(tl.integral(0.0, 1.0) == 0.0);
}

TEST_CASE("preset_constant reaches v after the switching time") {
    const VoltageTimeline tl = preset_constant(95.0, 0.0, 1e-8);
    CHECK(tl.voltage_at(1e-8) == 95.0);
    CHECK(tl.voltage_at(0.5e-8) == doctest::Approx(47.5).epsilon(1e-12));
}

TEST_CASE("invert_then_off is zero after 2*tau + t_switch") {
    const double tau = 1e-6, ts = 1e-8;
    const VoltageTimeline tl = preset_invert_then_off(95.0, 0.0, tau, ts);
    CHECK(tl.voltage_at(2.0 * tau + ts) == 0.0);
    CHECK(tl.voltage_at(5.0 * tau) == 0.0);

    // instantaneous switches: zero residual integral over the full support
    const VoltageTimeline ideal = preset_invert_then_off(95.0, 0.0, tau, 0.0);
    CHECK(ideal.integral(0.0, 3.0 * tau) == 0.0);

    // finite ramps: the residual equals the hand-computed trapezoid value -v*ts
    const double residual = tl.integral(0.0, 2.0 * tau + 2.0 * ts);
    CHECK(residual == doctest::Approx(-95.0 * ts).epsilon(1e-12));
}

TEST_CASE("multi_invert edge counts reproduce the simpler presets") {
    const VoltageTimeline one = preset_multi_invert(50.0, 0.0, 1e-6, 1, 1e-8);
    const VoltageTimeline inv = preset_invert_at(50.0, 0.0, 1e-6, 1e-8);
    REQUIRE(one.knots().size() == inv.knots().size());
    for (std::size_t i = 0; i < one.knots().size(); ++i) {
        CHECK(one.knots()[i].t_s == inv.knots()[i].t_s);
        CHECK(one.knots()[i].v_volts == inv.knots()[i].v_volts);
    }

    const VoltageTimeline zero = preset_multi_invert(50.0, 0.0, 1e-6, 0, 1e-8);
    const VoltageTimeline con = preset_constant(50.0, 0.0, 1e-8);
    REQUIRE(zero.knots().size() == con.knots().size());
    for (std::size_t i = 0; i < zero.knots().size(); ++i)
        CHECK(zero.knots()[i].v_volts == con.knots()[i].v_volts);
}

TEST_CASE("multi_invert cancels the integral at even multiples of tau") {
    const double tau = 7e-7;
    const VoltageTimeline tl = preset_multi_invert(95.0, 0.0, tau, 3, 0.0);
    for (int k = 1; k <= 3; ++k)
        CHECK(std::abs(tl.integral(0.0, 2.0 * k * tau)) <= 1e-18);
}

TEST_CASE("timelines are continuous under grid refinement") {
    Rng rng(421);
    for (int rep = 0; rep < 20; ++rep) {
        const double tau = rng.uniform(0.3e-6, 2e-6);
        const VoltageTimeline tl =
            preset_multi_invert(rng.uniform(-95.0, 95.0), rng.uniform(0.0, 1e-7),
                                tau, 1 + static_cast<int>(rng.uniform() * 3), 1e-8);
        const double eps = 1e-13;
        double max_jump = 0.0;
        for (int i = 0; i < 400; ++i) {
            const double t = rng.uniform(-1e-7, 8.0 * tau);
            max_jump = std::max(
                max_jump, std::abs(tl.voltage_at(t + eps) - tl.voltage_at(t)));
        }
        // slope is bounded by 2*95/t_switch, so an eps step moves V by <2e-3
        CHECK(max_jump < 2.0 * 190.0 / 1e-8 * eps);
    }
}

TEST_CASE("integral matches adaptive quadrature of voltage_at on random timelines") {
    Rng rng(77);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<Knot> knots;
        double t = rng.uniform(0.0, 2e-7);
        const int n = 2 + static_cast<int>(rng.uniform() * 6);
        for (int i = 0; i < n; ++i) {
            knots.push_back({t, rng.uniform(-100.0, 100.0)});
            t += rng.uniform(1e-8, 1e-6);
        }
        const VoltageTimeline tl(knots, 1e-8);
        const double t1 = rng.uniform(0.0, 1e-6);
        const double t2 = t1 + rng.uniform(1e-7, 4e-6);
        const double exact = tl.integral(t1, t2);
        const double numeric = oracles::adaptive_simpson(
            [&](double x) { return tl.voltage_at(x); }, t1, t2, 1e-16);
        CHECK(exact == doctest::Approx(numeric).epsilon(1e-12));
    }
}

TEST_CASE("range check warns above 100 V and stays silent at paper voltages") {
    CHECK(check_voltage_range(preset_constant(95.0, 0.0)).empty());
    CHECK(check_voltage_range(preset_invert_at(100.0, 0.0, 1e-6)).empty());
    CHECK(check_voltage_range(preset_constant(130.0, 0.0)).size() == 1);
}

TEST_CASE("invalid knot order is rejected") {
    CHECK_THROWS_AS(VoltageTimeline({{1e-6, 0.0}, {0.5e-6, 1.0}}, 1e-8),
                    std::invalid_argument);
    CHECK_THROWS_AS(VoltageTimeline({{1e-6, 0.0}, {1e-6, 5.0}}, 1e-8),
                    std::invalid_argument);  // jump needs t_switch == 0
    CHECK_NOTHROW(VoltageTimeline({{1e-6, 0.0}, {1e-6, 5.0}}, 0.0));
}
