#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "dynfatigue/config.hpp"
#include "dynfatigue/experiment.hpp"
#include "dynfatigue/report_io.hpp"
#include "dynfatigue/svg.hpp"

// File-producing front ends for the three CLI subcommands.

namespace dynfatigue::commands {

namespace detail {

inline std::filesystem::path prepare_output(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir + "'");
    }
    return std::filesystem::path(dir);
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    writer(out);
    out.flush();
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

}  // namespace detail

/// trajectory/torque/momentum CSVs for one cycle plus one chart each.
inline std::vector<std::filesystem::path> simulate(const RunConfig& config) {
    const MotionSpec spec = to_motion_spec(config);
    const auto dir = detail::prepare_output(config.paths.output);
    const CumulativeMomentum momentum(spec);
    const TorqueProfile& profile = momentum.profile();

    svg::Series angle{"angle [rad]", {}, {}}, velocity{"velocity [rad/s]", {}, {}},
        acceleration{"acceleration [rad/s2]", {}, {}}, torque{"torque [N.m]", {}, {}};
    svg::Series agonist{"agonist [N.m.s]", {}, {}}, antagonist{"antagonist [N.m.s]", {}, {}};
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        const auto& s = profile.samples[i];
        for (auto* series : {&angle, &velocity, &acceleration, &torque, &agonist, &antagonist}) {
            series->x.push_back(s.time);
        }
        angle.y.push_back(s.angle);
        velocity.y.push_back(s.velocity);
        acceleration.y.push_back(s.acceleration);
        torque.y.push_back(s.torque);
        agonist.y.push_back(momentum.running()[i].agonist);
        antagonist.y.push_back(momentum.running()[i].antagonist);
    }

    std::vector<std::filesystem::path> written;
    auto emit = [&](const char* name, auto&& writer) {
        detail::write_file(dir / name, writer);
        written.push_back(dir / name);
    };
    emit("trajectory.csv", [&](std::ostream& out) {
        csv::write_header(out, "time_s,angle_rad,velocity_rad_s,acceleration_rad_s2");
        for (const auto& s : profile.samples) {
            csv::write_row(out, {s.time, s.angle, s.velocity, s.acceleration});
        }
    });
    emit("torque.csv", [&](std::ostream& out) { write_profile_csv(out, profile); });
    emit("momentum.csv", [&](std::ostream& out) {
        csv::write_header(out, "time_s,agonist_Nms,antagonist_Nms,net_Nms");
        for (std::size_t i = 0; i < profile.samples.size(); ++i) {
            const auto& m = momentum.running()[i];
            csv::write_row(out, {profile.samples[i].time, m.agonist, m.antagonist, m.net});
        }
    });
    emit("trajectory.svg", [&](std::ostream& out) {
        svg::render(out, {"Joint kinematics over one cycle", "time [s]", "value",
                          {angle, velocity, acceleration}});
    });
    emit("torque.svg", [&](std::ostream& out) {
        svg::render(out, {"Elbow joint torque", "time [s]", "torque [N.m]", {torque}});
    });
    emit("momentum.svg", [&](std::ostream& out) {
        svg::render(out, {"Cumulative joint momentum", "time [s]", "momentum [N.m.s]",
                          {agonist, antagonist}});
    });
    return written;
}

inline EstimationReport estimate_report(const RunConfig& config) {
    const MotionSpec spec = to_motion_spec(config);
    return run_estimation(load_measurements_file(config.paths.measurements), spec);
}

/// report.json for the configured measurements.
inline std::filesystem::path estimate(const RunConfig& config) {
    const EstimationReport report = estimate_report(config);
    const auto dir = detail::prepare_output(config.paths.output);
    const auto path = dir / "report.json";
    detail::write_file(path, [&](std::ostream& out) { out << report_to_json(report).dump(2) << '\n'; });
    return path;
}

inline EstimationReport load_report_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open report '" + path + "'");
    }
    try {
        return report_from_json(ordered_json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("report '" + path + "': " + e.what());
    }
}

/// envelope_<channel>.csv, the measured points, and an overlay chart. Uses the
/// given report when provided, otherwise estimates inline.
inline std::vector<std::filesystem::path> predict(const RunConfig& config, Channel channel,
                                                  double horizon_min,
                                                  double step_min = kDefaultEnvelopeStepMin,
                                                  const std::optional<std::string>& report_path = {}) {
    const EstimationReport report =
        report_path ? load_report_file(*report_path) : estimate_report(config);
    const Envelope env = prediction_envelope(report, channel, horizon_min, step_min);
    const auto dir = detail::prepare_output(config.paths.output);
    const std::string name(to_string(channel));

    svg::Series min_k{"min k", {}, {}}, avg_k{"mean k", {}, {}}, max_k{"max k", {}, {}};
    for (std::size_t i = 0; i < env.min_k.samples.size(); ++i) {
        const double t = env.min_k.samples[i].time;
        min_k.x.push_back(t);
        avg_k.x.push_back(t);
        max_k.x.push_back(t);
        min_k.y.push_back(env.min_k.samples[i].cem_torque);
        avg_k.y.push_back(env.avg_k.samples[i].cem_torque);
        max_k.y.push_back(env.max_k.samples[i].cem_torque);
    }
    svg::Series measured{"measured", {}, {}, true};
    for (const auto& r : report.measurements.rows) {
        measured.x.push_back(r.time_min);
        measured.y.push_back(MeasurementSet::torque(r, channel));
    }

    std::vector<std::filesystem::path> written;
    const auto csv_path = dir / ("envelope_" + name + ".csv");
    detail::write_file(csv_path, [&](std::ostream& out) { write_envelope_csv(out, env); });
    written.push_back(csv_path);
    const auto measured_path = dir / ("envelope_" + name + "_measured.csv");
    detail::write_file(measured_path, [&](std::ostream& out) {
        write_measured_csv(out, report.measurements, channel);
    });
    written.push_back(measured_path);
    const auto svg_path = dir / ("envelope_" + name + ".svg");
    detail::write_file(svg_path, [&](std::ostream& out) {
        svg::render(out, {"Predicted exertable torque (" + name + ")", "time [min]",
                          "torque [N.m]", {min_k, avg_k, max_k, measured}});
    });
    written.push_back(svg_path);
    return written;
}

}  // namespace dynfatigue::commands
