#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace regap {

// Hard limit on motor angular positions, radians.
inline constexpr double kSetpointLimit = 5.0 * std::numbers::pi / 12.0;

// The two-parameter genotype driving the sinusoidal gait controller.
class ControlParams {
  public:
    ControlParams(double p1, double p2) : p1_(p1), p2_(p2) {
        if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
            throw std::invalid_argument("ControlParams: parameters must lie in [0,1]");
    }

    double p1() const { return p1_; }
    double p2() const { return p2_; }

    bool operator==(const ControlParams&) const = default;

  private:
    double p1_;
    double p2_;
};

enum class Leg { FrontRight, FrontLeft, RearRight, RearLeft };
enum class Joint { Upper, Lower };

// One of the quadruped's 8 motors (4 legs x 2 joints).
struct MotorId {
    Leg leg;
    Joint joint;

    // +1 for both motors of the front-right and rear-left legs, -1 otherwise.
    double direction() const {
        return (leg == Leg::FrontRight || leg == Leg::RearLeft) ? 1.0 : -1.0;
    }

    // 0 for upper joints, pi/2 for lower joints.
    double phase() const { return joint == Joint::Upper ? 0.0 : std::numbers::pi / 2.0; }
};

inline std::array<MotorId, 8> all_motors() {
    std::array<MotorId, 8> out{};
    int k = 0;
    for (Leg leg : {Leg::FrontRight, Leg::FrontLeft, Leg::RearRight, Leg::RearLeft})
        for (Joint joint : {Joint::Upper, Joint::Lower}) out[k++] = MotorId{leg, joint};
    return out;
}

// Desired angular position of one motor at time t (seconds), radians.
// Sinusoid with period 1 s, clamped to [-kSetpointLimit, kSetpointLimit].
inline double motor_setpoint(const ControlParams& params, MotorId motor, double t) {
    const double a = kSetpointLimit * motor.direction() * params.p1() -
                     kSetpointLimit * params.p2() *
                         std::sin(2.0 * std::numbers::pi * t - motor.phase());
    return std::clamp(a, -kSetpointLimit, kSetpointLimit);
}

}  // namespace regap
