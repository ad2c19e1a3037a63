#pragma once

#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "dynfatigue/anthropometry.hpp"
#include "dynfatigue/csv.hpp"
#include "dynfatigue/error.hpp"
#include "dynfatigue/quadrature.hpp"
#include "dynfatigue/trajectory.hpp"

namespace dynfatigue {

inline constexpr double kStandardGravity = 9.81;
inline constexpr double kDefaultTimeStep = 1e-3;

/// Grip position along the hand, as a fraction of hand length from the wrist.
/// The held load is a point mass at forearm_length + kGripFractionOfHand * hand_length.
inline constexpr double kGripFractionOfHand = 0.5;

/// One cyclic elbow motion with a load held in the hand.
///
/// Angles are measured from the horizontal; positive flexion raises the hand,
/// so the gravity moment is proportional to cos(angle).
struct MotionSpec {
    BodyParams body;
    double load_mass = 0.0;   ///< kg
    double theta_low = 0.0;   ///< rad
    double theta_high = 0.0;  ///< rad
    double half_period = 1.0; ///< s, duration of each of the rise and fall
    double time_step = kDefaultTimeStep;  ///< s
    double gravity = kStandardGravity;    ///< m/s^2

    double cycle_period() const { return 2.0 * half_period; }
    MotionCycle cycle() const { return make_cycle(theta_low, theta_high, half_period); }
};

inline void validate(const MotionSpec& spec) {
    const BodyParams& b = spec.body;
    if (!(b.forearm_length > 0.0) || !(b.forearm_radius >= 0.0) || !(b.hand_length >= 0.0) ||
        !(b.forearm_mass >= 0.0)) {
        throw ConfigError("body parameters must be positive lengths and a nonnegative mass");
    }
    if (!(spec.load_mass >= 0.0)) {
        throw ConfigError("load mass must be nonnegative");
    }
    if (!(spec.gravity > 0.0)) {
        throw ConfigError("gravity must be positive");
    }
    if (!(spec.half_period > 0.0)) {
        throw ConfigError("half period must be positive");
    }
    if (!(spec.time_step > 0.0) || spec.time_step > spec.half_period / 100.0) {
        throw ConfigError("time step must be in (0, half_period / 100]");
    }
    if (!std::isfinite(spec.theta_low) || !std::isfinite(spec.theta_high)) {
        throw ConfigError("joint angle range must be finite");
    }
}

/// Distance from the elbow axis to the held load.
inline double load_lever_arm(const BodyParams& body) {
    return body.forearm_length + kGripFractionOfHand * body.hand_length;
}

/// Forearm as a uniform solid cylinder about one end, plus the load as a point mass.
inline double moment_of_inertia(const MotionSpec& spec) {
    const BodyParams& b = spec.body;
    const double d = load_lever_arm(b);
    const double forearm = b.forearm_mass * (b.forearm_length * b.forearm_length / 3.0 +
                                             b.forearm_radius * b.forearm_radius / 4.0);
    return forearm + spec.load_mass * d * d;
}

/// g * (first mass moment about the elbow); the gravity torque is this times cos(angle).
inline double gravity_moment(const MotionSpec& spec) {
    const BodyParams& b = spec.body;
    return spec.gravity *
           (b.forearm_mass * b.forearm_length / 2.0 + spec.load_mass * load_lever_arm(b));
}

/// Kinetic and potential energy split into the arm and the held object.
struct Energy {
    double kinetic_joint = 0.0;
    double kinetic_object = 0.0;
    double potential_joint = 0.0;
    double potential_object = 0.0;

    double kinetic() const { return kinetic_joint + kinetic_object; }
    double potential() const { return potential_joint + potential_object; }
    double lagrangian() const { return kinetic() - potential(); }
};

/// Energies at a given angle and angular velocity; potential energy is zero
/// with the forearm horizontal.
inline Energy energy(const MotionSpec& spec, double angle, double velocity) {
    const BodyParams& b = spec.body;
    const double d = load_lever_arm(b);
    const double forearm_inertia = b.forearm_mass * (b.forearm_length * b.forearm_length / 3.0 +
                                                     b.forearm_radius * b.forearm_radius / 4.0);
    const double w2 = velocity * velocity;
    Energy e;
    e.kinetic_joint = 0.5 * forearm_inertia * w2;
    e.kinetic_object = 0.5 * spec.load_mass * d * d * w2;
    e.potential_joint = b.forearm_mass * spec.gravity * (b.forearm_length / 2.0) * std::sin(angle);
    e.potential_object = spec.load_mass * spec.gravity * d * std::sin(angle);
    return e;
}

/// Torque the elbow must produce: d/dt(dL/dthetadot) - dL/dtheta for L = E - U.
inline double joint_torque(const MotionSpec& spec, const KinematicSample& sample) {
    return moment_of_inertia(spec) * sample.acceleration +
           gravity_moment(spec) * std::cos(sample.angle);
}

/// Torque at any t >= 0 with the cycle repeated back to back.
inline double cycle_torque_at(const MotionSpec& spec, double t) {
    return joint_torque(spec, spec.cycle().at_periodic(t));
}

struct TorqueSample {
    double time = 0.0;
    double angle = 0.0;
    double velocity = 0.0;
    double acceleration = 0.0;
    double torque = 0.0;
};

/// Joint torque over one closed cycle on a uniform grid. The grid step is the
/// largest step not exceeding the requested time_step that divides half_period.
struct TorqueProfile {
    std::vector<TorqueSample> samples;
    double time_step = 0.0;
    double cycle_period = 0.0;

    std::vector<double> torques() const {
        std::vector<double> out;
        out.reserve(samples.size());
        for (const auto& s : samples) {
            out.push_back(s.torque);
        }
        return out;
    }
};

/// Momentum (time integral of torque) attributed to each muscle group, N*m*s
/// unless stated otherwise. Positive torque is the agonist's, negative the antagonist's.
struct MomentumSplit {
    double agonist = 0.0;
    double antagonist = 0.0;
    double net = 0.0;

    MomentumSplit scaled(double factor) const {
        return {agonist * factor, antagonist * factor, net * factor};
    }
    MomentumSplit& operator+=(const MomentumSplit& other) {
        agonist += other.agonist;
        antagonist += other.antagonist;
        net += other.net;
        return *this;
    }
};

namespace detail {

inline std::size_t intervals_per_half(const MotionSpec& spec) {
    const double ratio = spec.half_period / spec.time_step;
    return static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
}

inline MomentumSplit to_split(const quadrature::SignedArea& area) {
    return {area.positive, area.negative, area.net()};
}

}  // namespace detail

inline TorqueProfile torque_profile(const MotionSpec& spec) {
    validate(spec);
    const MotionCycle cycle = spec.cycle();
    const std::size_t n = detail::intervals_per_half(spec);
    const double h = spec.half_period / static_cast<double>(n);

    TorqueProfile profile;
    profile.time_step = h;
    profile.cycle_period = spec.cycle_period();
    profile.samples.reserve(2 * n + 1);
    for (std::size_t i = 0; i <= 2 * n; ++i) {
        const bool rising = i <= n;
        const double s = static_cast<double>(rising ? i : i - n) / static_cast<double>(n);
        KinematicSample k = detail::evaluate_normalized(rising ? cycle.rise : cycle.fall, s,
                                                        static_cast<double>(i) * h);
        profile.samples.push_back(
            {k.time, k.angle, k.velocity, k.acceleration, joint_torque(spec, k)});
    }
    return profile;
}

/// Sign-split trapezoid integral of the profile's torque.
inline MomentumSplit momentum_split(const TorqueProfile& profile) {
    const std::vector<double> tau = profile.torques();
    return detail::to_split(quadrature::split_trapezoid(tau, profile.time_step));
}

/// Running momentum for a repeated motion. Whole cycles reuse the one-cycle
/// integral; the trailing partial cycle is integrated on the same grid, with a
/// final short interval closed by the exact torque at the end time.
class CumulativeMomentum {
public:
    explicit CumulativeMomentum(MotionSpec spec)
        : spec_(spec), profile_(torque_profile(spec_)), cycle_(spec_.cycle()) {
        prefix_.reserve(profile_.samples.size());
        MomentumSplit running;
        prefix_.push_back(running);
        for (std::size_t i = 1; i < profile_.samples.size(); ++i) {
            running += detail::to_split(quadrature::split_interval(
                profile_.samples[i - 1].torque, profile_.samples[i].torque, profile_.time_step));
            prefix_.push_back(running);
        }
    }

    const MotionSpec& spec() const { return spec_; }
    const TorqueProfile& profile() const { return profile_; }
    const MomentumSplit& per_cycle() const { return prefix_.back(); }

    /// Running split at every profile sample of the first cycle.
    const std::vector<MomentumSplit>& running() const { return prefix_; }

    /// Momentum accumulated over [0, duration], duration in seconds.
    MomentumSplit at(double duration) const {
        if (!(duration >= 0.0) || !std::isfinite(duration)) {
            throw DomainError("momentum duration must be nonnegative");
        }
        const double period = profile_.cycle_period;
        const double cycles = std::floor(duration / period);
        double remainder = duration - cycles * period;
        if (remainder < 0.0) {
            remainder = 0.0;
        }
        MomentumSplit total = per_cycle().scaled(cycles);
        total += partial(remainder);
        return total;
    }

private:
    MomentumSplit partial(double remainder) const {
        const double h = profile_.time_step;
        const std::size_t last = profile_.samples.size() - 1;
        auto idx = static_cast<std::size_t>(std::floor(remainder / h + 1e-9));
        if (idx >= last) {
            return per_cycle();
        }
        MomentumSplit out = prefix_[idx];
        const double leftover = remainder - static_cast<double>(idx) * h;
        if (leftover > 1e-12 * h) {
            const double tau_end = joint_torque(spec_, cycle_.at(remainder));
            out += detail::to_split(
                quadrature::split_interval(profile_.samples[idx].torque, tau_end, leftover));
        }
        return out;
    }

    MotionSpec spec_;
    TorqueProfile profile_;
    MotionCycle cycle_;
    std::vector<MomentumSplit> prefix_;
};

inline MomentumSplit cumulative_momentum(const MotionSpec& spec, double duration) {
    if (!(duration >= 0.0)) {
        throw DomainError("momentum duration must be nonnegative");
    }
    return CumulativeMomentum(spec).at(duration);
}

inline void write_profile_csv(std::ostream& out, const TorqueProfile& profile) {
    csv::write_header(out, "time_s,angle_rad,velocity_rad_s,acceleration_rad_s2,torque_Nm");
    for (const auto& s : profile.samples) {
        csv::write_row(out, {s.time, s.angle, s.velocity, s.acceleration, s.torque});
    }
}

}  // namespace dynfatigue
