#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <span>
#include <vector>

#include "dynfatigue/csv.hpp"
#include "dynfatigue/dynamics.hpp"
#include "dynfatigue/error.hpp"
#include "dynfatigue/ode.hpp"

namespace dynfatigue {

inline constexpr double kSecondsPerMinute = 60.0;

/// Momentum in N*m*min, the unit the fatigue rate (1/min) is paired with.
inline MomentumSplit to_newton_meter_minutes(const MomentumSplit& nms) {
    return nms.scaled(1.0 / kSecondsPerMinute);
}

struct FatigueParams {
    double mvc_torque = 0.0;    ///< N*m, maximum voluntary contraction torque
    double fatigue_rate = 0.0;  ///< 1/min
};

inline void validate(const FatigueParams& p) {
    if (!(p.mvc_torque > 0.0) || !std::isfinite(p.mvc_torque)) {
        throw DomainError("MVC torque must be positive");
    }
    if (!(p.fatigue_rate >= 0.0) || !std::isfinite(p.fatigue_rate)) {
        throw DomainError("fatigue rate must be nonnegative");
    }
}

struct CapacitySample {
    double time = 0.0;        ///< min
    double cem_torque = 0.0;  ///< N*m
};

/// Current exertable maximum torque over time.
struct CapacityCurve {
    std::vector<CapacitySample> samples;
};

/// Remaining capacity after accumulated momentum (N*m*min):
/// mvc * exp(-k * momentum / mvc).
inline double capacity_closed_form(const FatigueParams& params, double momentum) {
    validate(params);
    if (!(momentum >= 0.0)) {
        throw DomainError("momentum must be nonnegative");
    }
    return params.mvc_torque * std::exp(-params.fatigue_rate * momentum / params.mvc_torque);
}

/// Integrates dC/dt = -k * (C / mvc) * torque(t) from C(0) = mvc with fixed-step
/// RK4. Time is in minutes; torque_fn must return the nonnegative driving torque.
/// Times where torque_fn jumps should be passed as breakpoints; the integrator
/// then steps exactly onto them and uses one-sided values.
template <typename TorqueFn>
CapacityCurve capacity_ode(const FatigueParams& params, TorqueFn&& torque_fn, double t_end,
                           double step, std::span<const double> breakpoints = {}) {
    validate(params);
    if (!(step > 0.0)) {
        throw DomainError("ODE step must be positive");
    }
    if (!(t_end >= 0.0)) {
        throw DomainError("ODE end time must be nonnegative");
    }
    const double rate = params.fatigue_rate / params.mvc_torque;
    auto rhs = [&](double t, double c) { return -rate * c * torque_fn(t); };
    const auto points = ode::rk4<double>(rhs, 0.0, params.mvc_torque, t_end, step, breakpoints);
    CapacityCurve curve;
    curve.samples.reserve(points.size());
    for (const auto& p : points) {
        curve.samples.push_back({p.time, p.value});
    }
    return curve;
}

struct KEstimate {
    double value = 0.0;    ///< 1/min
    bool warm_up = false;  ///< measured capacity exceeded MVC; value clamped to 0
};

/// Inverts the closed form for k given one residual-capacity measurement.
/// momentum is in N*m*min.
inline KEstimate estimate_k(double mvc, double cem_measured, double momentum) {
    if (!(mvc > 0.0) || !(cem_measured > 0.0)) {
        throw DomainError("torques must be positive");
    }
    if (!(momentum >= 0.0)) {
        throw DomainError("momentum must be nonnegative");
    }
    if (momentum == 0.0) {
        throw EstimationError("fatigue rate undefined for zero momentum");
    }
    if (cem_measured > mvc) {
        return {0.0, true};
    }
    return {-mvc * std::log(cem_measured / mvc) / momentum, false};
}

struct KSummary {
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

inline KSummary summarize(std::span<const double> ks) {
    if (ks.empty()) {
        throw EstimationError("no fatigue-rate estimates to summarize");
    }
    const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
    const double mean = std::accumulate(ks.begin(), ks.end(), 0.0) / static_cast<double>(ks.size());
    // Guard the ordering against rounding in the mean of equal values.
    return {*lo, std::clamp(mean, *lo, *hi), *hi};
}

struct Observation {
    double momentum = 0.0;    ///< N*m*min
    double cem_torque = 0.0;  ///< N*m
};

/// Least-squares k over several observations: fits ln(cem/mvc) = -(k/mvc) * momentum
/// through the origin. Rows with zero momentum carry no information and are skipped.
inline double least_squares_k(double mvc, std::span<const Observation> rows) {
    if (!(mvc > 0.0)) {
        throw DomainError("MVC torque must be positive");
    }
    double num = 0.0;
    double den = 0.0;
    for (const auto& r : rows) {
        if (!(r.cem_torque > 0.0) || !(r.momentum >= 0.0)) {
            throw DomainError("observations need positive torque and nonnegative momentum");
        }
        num += r.momentum * std::log(r.cem_torque / mvc);
        den += r.momentum * r.momentum;
    }
    if (den == 0.0) {
        throw EstimationError("fatigue rate undefined for zero momentum");
    }
    return -mvc * num / den;
}

inline void write_capacity_csv(std::ostream& out, const CapacityCurve& curve) {
    csv::write_header(out, "time_min,cem_torque_Nm");
    for (const auto& s : curve.samples) {
        csv::write_row(out, {s.time, s.cem_torque});
    }
}

}  // namespace dynfatigue
