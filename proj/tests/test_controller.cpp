#include <doctest.h>

#include <cmath>
#include <numbers>

#include "regap/controller.hpp"
#include "regap/rng.hpp"

using namespace regap;

namespace {
const MotorId kFrontRightUpper{Leg::FrontRight, Joint::Upper};
const MotorId kFrontLeftLower{Leg::FrontLeft, Joint::Lower};
}  // namespace

TEST_CASE("genotype construction rejects out-of-range parameters") {
    CHECK_NOTHROW(ControlParams(0.0, 1.0));
    CHECK_THROWS_AS(ControlParams(-0.01, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ControlParams(0.5, 1.01), std::invalid_argument);
    CHECK_THROWS_AS(ControlParams(std::nan(""), 0.5), std::invalid_argument);
}

TEST_CASE("exactly 8 distinct motors with the stated directions and phases") {
    const auto motors = all_motors();
    CHECK(motors.size() == 8);
    int positive = 0;
    for (const auto& m : motors) {
        if (m.direction() > 0) ++positive;
        CHECK(std::abs(m.direction()) == 1.0);
        CHECK(m.phase() == (m.joint == Joint::Upper ? 0.0 : std::numbers::pi / 2));
    }
    CHECK(positive == 4);  // front-right and rear-left legs
    CHECK(MotorId{Leg::FrontRight, Joint::Upper}.direction() == 1.0);
    CHECK(MotorId{Leg::RearLeft, Joint::Lower}.direction() == 1.0);
    CHECK(MotorId{Leg::FrontLeft, Joint::Upper}.direction() == -1.0);
    CHECK(MotorId{Leg::RearRight, Joint::Lower}.direction() == -1.0);
}

TEST_CASE("setpoint closed-form anchors") {
    // zero genotype is silent everywhere
    for (const auto& m : all_motors())
        CHECK(motor_setpoint(ControlParams{0, 0}, m, 0.37) == 0.0);

    CHECK(motor_setpoint(ControlParams{1, 0}, kFrontRightUpper, 0.3) ==
          doctest::Approx(5 * std::numbers::pi / 12).epsilon(1e-12));
    // upper joint, p2 only, quarter period
    CHECK(motor_setpoint(ControlParams{0, 1}, kFrontRightUpper, 0.25) ==
          doctest::Approx(-5 * std::numbers::pi / 12).epsilon(1e-12));
    // lower joint, p2 only, t = 0: sin(-pi/2) flips the sign
    CHECK(motor_setpoint(ControlParams{0, 1}, kFrontLeftLower, 0.0) ==
          doctest::Approx(5 * std::numbers::pi / 12).epsilon(1e-12));
}

TEST_CASE("setpoints are saturated and 1-second periodic") {
    Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        const ControlParams p{rng.uniform(), rng.uniform()};
        const MotorId m = all_motors()[rng.uniform_int(8)];
        const double t = rng.uniform(0.0, 20.0);
        const double a = motor_setpoint(p, m, t);
        CHECK(std::abs(a) <= 5 * std::numbers::pi / 12 + 1e-12);
        CHECK(a == doctest::Approx(motor_setpoint(p, m, t + 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("upper and lower joints of one leg differ only by a quarter-period phase") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const double p2 = rng.uniform();
        const double t = rng.uniform(0.0, 2.0);
        // p1 = 0 removes the direction term, isolating the sinusoid
        const ControlParams p{0.0, p2};
        const MotorId upper{Leg::RearRight, Joint::Upper};
        const MotorId lower{Leg::RearRight, Joint::Lower};
        CHECK(motor_setpoint(p, upper, t) ==
              doctest::Approx(motor_setpoint(p, lower, t + 0.25)).epsilon(1e-9));
    }
}
