#pragma once

#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "dynfatigue/anthropometry.hpp"
#include "dynfatigue/dynamics.hpp"
#include "dynfatigue/error.hpp"

#ifndef DYNFATIGUE_DEFAULT_MEASUREMENTS
#define DYNFATIGUE_DEFAULT_MEASUREMENTS "data/table2.csv"
#endif

namespace dynfatigue {

/// User-facing run configuration in CLI units (degrees, seconds, meters).
/// Defaults reproduce the elbow case study.
struct RunConfig {
    struct SubjectSection {
        double height_m = 1.88;
        double mass_kg = 80.0;
        bool operator==(const SubjectSection&) const = default;
    } subject;

    struct MotionSection {
        double theta_low_deg = 0.0;
        double theta_high_deg = 75.0;
        double half_period_s = 1.0;
        double bar_mass_kg = 3.0;
        double dt_s = kDefaultTimeStep;
        double gravity_m_s2 = kStandardGravity;
        bool operator==(const MotionSection&) const = default;
    } motion;

    struct PathsSection {
        std::string measurements = DYNFATIGUE_DEFAULT_MEASUREMENTS;
        std::string output = "out";
        bool operator==(const PathsSection&) const = default;
    } paths;

    bool operator==(const RunConfig&) const = default;
};

inline double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }

inline MotionSpec to_motion_spec(const RunConfig& config) {
    MotionSpec spec;
    try {
        spec.body = derive_body_params({config.subject.height_m, config.subject.mass_kg});
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    spec.load_mass = config.motion.bar_mass_kg;
    spec.theta_low = degrees_to_radians(config.motion.theta_low_deg);
    spec.theta_high = degrees_to_radians(config.motion.theta_high_deg);
    spec.half_period = config.motion.half_period_s;
    spec.time_step = config.motion.dt_s;
    spec.gravity = config.motion.gravity_m_s2;
    validate(spec);
    return spec;
}

inline nlohmann::ordered_json config_to_json(const RunConfig& c) {
    return nlohmann::ordered_json{
        {"subject", {{"height_m", c.subject.height_m}, {"mass_kg", c.subject.mass_kg}}},
        {"motion",
         {{"theta_low_deg", c.motion.theta_low_deg},
          {"theta_high_deg", c.motion.theta_high_deg},
          {"half_period_s", c.motion.half_period_s},
          {"bar_mass_kg", c.motion.bar_mass_kg},
          {"dt_s", c.motion.dt_s},
          {"gravity_m_s2", c.motion.gravity_m_s2}}},
        {"paths", {{"measurements", c.paths.measurements}, {"output", c.paths.output}}},
    };
}

namespace detail {

template <typename T>
void read_if_present(const nlohmann::ordered_json& section, const char* key, T& field) {
    if (section.contains(key)) {
        field = section.at(key).get<T>();
    }
}

}  // namespace detail

/// Missing keys keep their defaults; unknown keys are rejected.
inline RunConfig config_from_json(const nlohmann::ordered_json& j) {
    RunConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key != "subject" && key != "motion" && key != "paths") {
                throw ConfigError("unknown config section '" + key + "'");
            }
        }
        if (j.contains("subject")) {
            const auto& s = j.at("subject");
            detail::read_if_present(s, "height_m", c.subject.height_m);
            detail::read_if_present(s, "mass_kg", c.subject.mass_kg);
        }
        if (j.contains("motion")) {
            const auto& m = j.at("motion");
            detail::read_if_present(m, "theta_low_deg", c.motion.theta_low_deg);
            detail::read_if_present(m, "theta_high_deg", c.motion.theta_high_deg);
            detail::read_if_present(m, "half_period_s", c.motion.half_period_s);
            detail::read_if_present(m, "bar_mass_kg", c.motion.bar_mass_kg);
            detail::read_if_present(m, "dt_s", c.motion.dt_s);
            detail::read_if_present(m, "gravity_m_s2", c.motion.gravity_m_s2);
        }
        if (j.contains("paths")) {
            const auto& p = j.at("paths");
            detail::read_if_present(p, "measurements", c.paths.measurements);
            detail::read_if_present(p, "output", c.paths.output);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return c;
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file '" + path + "'");
    }
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace dynfatigue
