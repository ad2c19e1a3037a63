#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "dynfatigue/csv.hpp"
#include "dynfatigue/experiment.hpp"

namespace dynfatigue {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

inline ordered_json summary_json(const std::optional<KSummary>& s) {
    if (!s) {
        return nullptr;
    }
    return ordered_json{{"min", s->min}, {"mean", s->mean}, {"max", s->max}};
}

inline std::optional<KSummary> summary_from_json(const ordered_json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return KSummary{j.at("min").get<double>(), j.at("mean").get<double>(),
                    j.at("max").get<double>()};
}

}  // namespace detail

inline ordered_json spec_to_json(const MotionSpec& spec) {
    return ordered_json{
        {"forearm_length_m", spec.body.forearm_length},
        {"forearm_radius_m", spec.body.forearm_radius},
        {"hand_length_m", spec.body.hand_length},
        {"forearm_mass_kg", spec.body.forearm_mass},
        {"load_mass_kg", spec.load_mass},
        {"load_lever_arm_m", load_lever_arm(spec.body)},
        {"theta_low_rad", spec.theta_low},
        {"theta_high_rad", spec.theta_high},
        {"half_period_s", spec.half_period},
        {"time_step_s", spec.time_step},
        {"gravity_m_s2", spec.gravity},
    };
}

inline MotionSpec spec_from_json(const ordered_json& j) {
    MotionSpec spec;
    spec.body.forearm_length = j.at("forearm_length_m").get<double>();
    spec.body.forearm_radius = j.at("forearm_radius_m").get<double>();
    spec.body.hand_length = j.at("hand_length_m").get<double>();
    spec.body.forearm_mass = j.at("forearm_mass_kg").get<double>();
    spec.load_mass = j.at("load_mass_kg").get<double>();
    spec.theta_low = j.at("theta_low_rad").get<double>();
    spec.theta_high = j.at("theta_high_rad").get<double>();
    spec.half_period = j.at("half_period_s").get<double>();
    spec.time_step = j.at("time_step_s").get<double>();
    spec.gravity = j.at("gravity_m_s2").get<double>();
    return spec;
}

/// Report as JSON. Per-row k arrays hold null where a channel is non-estimable.
inline ordered_json report_to_json(const EstimationReport& report) {
    ordered_json j;
    ordered_json times = ordered_json::array();
    ordered_json k_ag = ordered_json::array();
    ordered_json k_ant = ordered_json::array();
    ordered_json m_ag = ordered_json::array();
    ordered_json m_ant = ordered_json::array();
    for (const auto& r : report.rows) {
        times.push_back(r.time_min);
        k_ag.push_back(detail::optional_number(r.k_agonist));
        k_ant.push_back(detail::optional_number(r.k_antagonist));
        m_ag.push_back(r.momentum_agonist);
        m_ant.push_back(r.momentum_antagonist);
    }
    j["time_min"] = times;
    j["k_agonist"] = k_ag;
    j["k_antagonist"] = k_ant;
    j["summary"] = ordered_json{{"agonist", detail::summary_json(report.summary_agonist)},
                                {"antagonist", detail::summary_json(report.summary_antagonist)}};
    j["k_least_squares"] =
        ordered_json{{"agonist", detail::optional_number(report.least_squares_agonist)},
                     {"antagonist", detail::optional_number(report.least_squares_antagonist)}};
    ordered_json flags = ordered_json::array();
    for (const auto& f : report.flags) {
        flags.push_back(ordered_json{{"row", f.row},
                                     {"time_min", f.time_min},
                                     {"channel", to_string(f.channel)},
                                     {"flag", to_string(f.kind)}});
    }
    j["flags"] = flags;
    j["momentum_agonist_Nm_min"] = m_ag;
    j["momentum_antagonist_Nm_min"] = m_ant;
    ordered_json measured = ordered_json::array();
    for (const auto& r : report.measurements.rows) {
        measured.push_back(ordered_json{{"time_min", r.time_min}, {"push_Nm", r.push}, {"pull_Nm", r.pull}});
    }
    j["measurements"] = measured;
    j["spec"] = spec_to_json(report.spec);
    return j;
}

/// Rebuilds the parts of a report needed for prediction: spec, measurements,
/// per-row k values and summaries.
inline EstimationReport report_from_json(const ordered_json& j) {
    EstimationReport report;
    report.spec = spec_from_json(j.at("spec"));
    for (const auto& m : j.at("measurements")) {
        report.measurements.rows.push_back({m.at("time_min").get<double>(),
                                            m.at("push_Nm").get<double>(),
                                            m.at("pull_Nm").get<double>()});
    }
    validate(report.measurements);
    const auto& times = j.at("time_min");
    const auto& k_ag = j.at("k_agonist");
    const auto& k_ant = j.at("k_antagonist");
    for (std::size_t i = 0; i < times.size(); ++i) {
        RowEstimate r;
        r.time_min = times[i].get<double>();
        if (!k_ag[i].is_null()) {
            r.k_agonist = k_ag[i].get<double>();
        }
        if (!k_ant[i].is_null()) {
            r.k_antagonist = k_ant[i].get<double>();
        }
        report.rows.push_back(r);
    }
    report.summary_agonist = detail::summary_from_json(j.at("summary").at("agonist"));
    report.summary_antagonist = detail::summary_from_json(j.at("summary").at("antagonist"));
    return report;
}

inline void write_envelope_csv(std::ostream& out, const Envelope& env) {
    csv::write_header(out, "time_min,cem_min_k,cem_avg_k,cem_max_k");
    for (std::size_t i = 0; i < env.min_k.samples.size(); ++i) {
        csv::write_row(out, {env.min_k.samples[i].time, env.min_k.samples[i].cem_torque,
                             env.avg_k.samples[i].cem_torque, env.max_k.samples[i].cem_torque});
    }
}

inline void write_measured_csv(std::ostream& out, const MeasurementSet& m, Channel c) {
    csv::write_header(out, "time_min,cem_measured_Nm");
    for (const auto& r : m.rows) {
        csv::write_row(out, {r.time_min, MeasurementSet::torque(r, c)});
    }
}

}  // namespace dynfatigue
