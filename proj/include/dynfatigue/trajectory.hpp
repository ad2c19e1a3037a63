#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "dynfatigue/error.hpp"

namespace dynfatigue {

/// Rest-to-rest point-to-point joint motion.
struct TrajectorySegment {
    double theta_initial = 0.0;  ///< rad
    double theta_end = 0.0;      ///< rad
    double duration = 0.0;       ///< s
};

struct KinematicSample {
    double time = 0.0;          ///< s
    double angle = 0.0;         ///< rad
    double velocity = 0.0;      ///< rad/s
    double acceleration = 0.0;  ///< rad/s^2
};

namespace detail {

// Normalized quintic and its derivatives with respect to s = t / t_f.
inline double quintic_ratio(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }
inline double quintic_ratio_d1(double s) { return 30.0 * s * s * (1.0 + s * (-2.0 + s)); }
inline double quintic_ratio_d2(double s) { return s * (60.0 + s * (-180.0 + 120.0 * s)); }

inline void check_duration(double duration) {
    if (!(duration > 0.0)) {
        throw DomainError("trajectory duration must be positive");
    }
}

inline KinematicSample evaluate_normalized(const TrajectorySegment& seg, double s, double time) {
    const double span = seg.theta_end - seg.theta_initial;
    const double tf = seg.duration;
    const double angle = s == 1.0 ? seg.theta_end : seg.theta_initial + quintic_ratio(s) * span;
    return KinematicSample{time, angle,
                           quintic_ratio_d1(s) * span / tf, quintic_ratio_d2(s) * span / (tf * tf)};
}

}  // namespace detail

/// r(t) = 10 (t/t_f)^3 - 15 (t/t_f)^4 + 6 (t/t_f)^5, the unique quintic with
/// r(0) = 0, r(t_f) = 1 and zero first and second derivatives at both ends.
inline double interpolation_ratio(double t, double t_f) {
    detail::check_duration(t_f);
    if (!(t >= 0.0 && t <= t_f)) {
        throw DomainError("interpolation time outside [0, t_f]");
    }
    return detail::quintic_ratio(t / t_f);
}

/// Angle, velocity and acceleration of the segment at time t in [0, duration].
inline KinematicSample evaluate(const TrajectorySegment& segment, double t) {
    detail::check_duration(segment.duration);
    if (!(t >= 0.0 && t <= segment.duration)) {
        throw DomainError("evaluation time outside segment duration");
    }
    return detail::evaluate_normalized(segment, t / segment.duration, t);
}

/// Monomial coefficients a0..a5 of theta(t) for the segment.
inline std::array<double, 6> quintic_coefficients(const TrajectorySegment& segment) {
    detail::check_duration(segment.duration);
    const double span = segment.theta_end - segment.theta_initial;
    const double tf = segment.duration;
    const double tf3 = tf * tf * tf;
    return {segment.theta_initial, 0.0, 0.0, 10.0 * span / tf3, -15.0 * span / (tf3 * tf),
            6.0 * span / (tf3 * tf * tf)};
}

/// One flexion/extension cycle: low -> high, then straight back high -> low.
struct MotionCycle {
    TrajectorySegment rise;
    TrajectorySegment fall;

    double period() const { return rise.duration + fall.duration; }

    /// Sample at time t in [0, period()].
    KinematicSample at(double t) const {
        if (!(t >= 0.0 && t <= period())) {
            throw DomainError("cycle time outside [0, period]");
        }
        if (t <= rise.duration) {
            return evaluate(rise, t);
        }
        KinematicSample sample = evaluate(fall, std::min(t - rise.duration, fall.duration));
        sample.time = t;
        return sample;
    }

    /// Sample at any t >= 0 treating the motion as repeated back to back.
    KinematicSample at_periodic(double t) const {
        if (!(t >= 0.0)) {
            throw DomainError("cycle time must be nonnegative");
        }
        KinematicSample sample = at(std::fmod(t, period()));
        sample.time = t;
        return sample;
    }
};

inline MotionCycle make_cycle(double theta_low, double theta_high, double half_period) {
    detail::check_duration(half_period);
    return MotionCycle{TrajectorySegment{theta_low, theta_high, half_period},
                       TrajectorySegment{theta_high, theta_low, half_period}};
}

}  // namespace dynfatigue
