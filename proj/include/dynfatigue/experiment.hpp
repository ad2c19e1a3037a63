#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynfatigue/anthropometry.hpp"
#include "dynfatigue/dynamics.hpp"
#include "dynfatigue/error.hpp"
#include "dynfatigue/fatigue.hpp"

namespace dynfatigue {

enum class Channel { agonist, antagonist };

inline std::string_view to_string(Channel c) {
    return c == Channel::agonist ? "agonist" : "antagonist";
}

inline Channel parse_channel(std::string_view name) {
    if (name == "agonist") {
        return Channel::agonist;
    }
    if (name == "antagonist") {
        return Channel::antagonist;
    }
    throw ConfigError("unknown channel '" + std::string(name) + "'");
}

/// Residual maximum push (agonist) and pull (antagonist) torque after a bout
/// of the cyclic motion lasting time_min minutes.
struct MeasurementRow {
    double time_min = 0.0;
    double push = 0.0;  ///< N*m
    double pull = 0.0;  ///< N*m
};

/// Rows sorted by strictly increasing time; the time-0 row holds the MVC of each channel.
struct MeasurementSet {
    std::vector<MeasurementRow> rows;

    double mvc(Channel c) const { return torque(rows.front(), c); }

    static double torque(const MeasurementRow& r, Channel c) {
        return c == Channel::agonist ? r.push : r.pull;
    }
};

inline void validate(const MeasurementSet& m) {
    if (m.rows.empty()) {
        throw ParseError("measurement set is empty", 0);
    }
    for (std::size_t i = 0; i < m.rows.size(); ++i) {
        const auto& r = m.rows[i];
        if (i == 0 && r.time_min != 0.0) {
            throw ParseError("first row must be at time 0", 0);
        }
        if (i > 0 && !(r.time_min > m.rows[i - 1].time_min)) {
            throw ParseError("operation times must be strictly increasing", 0);
        }
        if (!(r.push > 0.0) || !(r.pull > 0.0)) {
            throw ParseError("torques must be positive", 0);
        }
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline double parse_field(std::string_view text, std::size_t line, std::string_view name) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
        !std::isfinite(value)) {
        throw ParseError("non-numeric " + std::string(name) + " field '" + std::string(text) + "'",
                         line);
    }
    return value;
}

}  // namespace detail

inline constexpr std::string_view kMeasurementHeader = "time_min,push_Nm,pull_Nm";

/// Reads `time_min,push_Nm,pull_Nm` CSV. Blank lines are ignored.
inline MeasurementSet load_measurements(std::istream& in) {
    MeasurementSet set;
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = detail::trim(raw);
        if (line == 1 && text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
            text.remove_prefix(3);
        }
        if (text.empty()) {
            continue;
        }
        if (!header_seen) {
            if (text != kMeasurementHeader) {
                throw ParseError("expected header '" + std::string(kMeasurementHeader) + "'", line);
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const auto comma = text.find(',', start);
            fields.push_back(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line);
        }
        MeasurementRow row{detail::parse_field(fields[0], line, "time_min"),
                           detail::parse_field(fields[1], line, "push_Nm"),
                           detail::parse_field(fields[2], line, "pull_Nm")};
        if (set.rows.empty() && row.time_min != 0.0) {
            throw ParseError("first data row must be at time 0", line);
        }
        if (!set.rows.empty() && !(row.time_min > set.rows.back().time_min)) {
            throw ParseError("operation times must be strictly increasing", line);
        }
        if (!(row.push > 0.0) || !(row.pull > 0.0)) {
            throw ParseError("torques must be positive", line);
        }
        set.rows.push_back(row);
    }
    if (!header_seen) {
        throw ParseError("empty measurement input", 0);
    }
    if (set.rows.empty()) {
        throw ParseError("no measurement rows (missing time-0 row)", line);
    }
    return set;
}

inline MeasurementSet load_measurements_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open measurements file '" + path + "'");
    }
    try {
        return load_measurements(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
}

/// The case-study subject: 1.88 m, 80 kg.
inline Subject case_study_subject() { return {1.88, 80.0}; }

/// Elbow flexion 0 -> 75 degrees and back with a 3 kg bar, 1 s each way.
inline MotionSpec case_study_motion() {
    MotionSpec spec;
    spec.body = derive_body_params(case_study_subject());
    spec.load_mass = 3.0;
    spec.theta_low = 0.0;
    spec.theta_high = 75.0 * std::numbers::pi / 180.0;
    spec.half_period = 1.0;
    spec.time_step = kDefaultTimeStep;
    spec.gravity = kStandardGravity;
    return spec;
}

enum class FlagKind { warm_up, non_estimable };

inline std::string_view to_string(FlagKind k) {
    return k == FlagKind::warm_up ? "warm_up" : "non_estimable";
}

struct RowFlag {
    std::size_t row = 0;
    double time_min = 0.0;
    Channel channel = Channel::agonist;
    FlagKind kind = FlagKind::warm_up;
};

/// Per-row fatigue rates for rows 1..n; momenta in N*m*min.
struct RowEstimate {
    double time_min = 0.0;
    double momentum_agonist = 0.0;
    double momentum_antagonist = 0.0;
    std::optional<double> k_agonist;
    std::optional<double> k_antagonist;
    bool warm_up_agonist = false;
    bool warm_up_antagonist = false;
};

struct EstimationReport {
    MotionSpec spec;
    MeasurementSet measurements;
    std::vector<RowEstimate> rows;
    std::vector<RowFlag> flags;
    std::optional<KSummary> summary_agonist;
    std::optional<KSummary> summary_antagonist;
    std::optional<double> least_squares_agonist;
    std::optional<double> least_squares_antagonist;

    const std::optional<KSummary>& summary(Channel c) const {
        return c == Channel::agonist ? summary_agonist : summary_antagonist;
    }
    std::vector<std::optional<double>> k_values(Channel c) const {
        std::vector<std::optional<double>> out;
        for (const auto& r : rows) {
            out.push_back(c == Channel::agonist ? r.k_agonist : r.k_antagonist);
        }
        return out;
    }
};

/// Estimates k for each channel and each post-baseline row. Warm-up rows keep
/// k = 0 and a flag and are left out of the min/mean/max summary; rows with no
/// momentum on a channel are flagged non-estimable.
inline EstimationReport run_estimation(const MeasurementSet& measurements, const MotionSpec& spec) {
    validate(measurements);
    validate(spec);
    const CumulativeMomentum momentum(spec);

    EstimationReport report;
    report.spec = spec;
    report.measurements = measurements;

    std::vector<double> summary_ag;
    std::vector<double> summary_ant;
    std::vector<Observation> obs_ag;
    std::vector<Observation> obs_ant;
    const double mvc_push = measurements.mvc(Channel::agonist);
    const double mvc_pull = measurements.mvc(Channel::antagonist);

    for (std::size_t i = 1; i < measurements.rows.size(); ++i) {
        const auto& m = measurements.rows[i];
        const MomentumSplit split =
            to_newton_meter_minutes(momentum.at(m.time_min * kSecondsPerMinute));
        RowEstimate row;
        row.time_min = m.time_min;
        row.momentum_agonist = split.agonist;
        row.momentum_antagonist = split.antagonist;

        auto fill = [&](Channel c, double mvc, double measured, double mom,
                        std::optional<double>& k, bool& warm, std::vector<double>& summary,
                        std::vector<Observation>& obs) {
            if (mom == 0.0) {
                report.flags.push_back({i, m.time_min, c, FlagKind::non_estimable});
                return;
            }
            const KEstimate est = estimate_k(mvc, measured, mom);
            k = est.value;
            warm = est.warm_up;
            obs.push_back({mom, measured});
            if (est.warm_up) {
                report.flags.push_back({i, m.time_min, c, FlagKind::warm_up});
            } else {
                summary.push_back(est.value);
            }
        };
        fill(Channel::agonist, mvc_push, m.push, split.agonist, row.k_agonist,
             row.warm_up_agonist, summary_ag, obs_ag);
        fill(Channel::antagonist, mvc_pull, m.pull, split.antagonist, row.k_antagonist,
             row.warm_up_antagonist, summary_ant, obs_ant);
        report.rows.push_back(row);
    }

    if (!summary_ag.empty()) {
        report.summary_agonist = summarize(summary_ag);
    }
    if (!summary_ant.empty()) {
        report.summary_antagonist = summarize(summary_ant);
    }
    if (!obs_ag.empty()) {
        report.least_squares_agonist = least_squares_k(mvc_push, obs_ag);
    }
    if (!obs_ant.empty()) {
        report.least_squares_antagonist = least_squares_k(mvc_pull, obs_ant);
    }
    return report;
}

/// Capacity predictions under the minimum, mean and maximum estimated k.
struct Envelope {
    Channel channel = Channel::agonist;
    KSummary k;
    CapacityCurve min_k;
    CapacityCurve avg_k;
    CapacityCurve max_k;
};

inline constexpr double kDefaultEnvelopeStepMin = 0.05;

/// Samples the closed-form capacity on [0, horizon] minutes for each summary k,
/// driven by the channel's cumulative momentum under the report's motion.
inline Envelope prediction_envelope(const EstimationReport& report, Channel channel,
                                    double horizon_min,
                                    double step_min = kDefaultEnvelopeStepMin) {
    const auto& summary = report.summary(channel);
    if (!summary) {
        throw EstimationError("channel '" + std::string(to_string(channel)) +
                              "' has no estimable fatigue rate");
    }
    if (!(horizon_min >= 0.0) || !std::isfinite(horizon_min)) {
        throw DomainError("prediction horizon must be nonnegative");
    }
    if (!(step_min > 0.0)) {
        throw DomainError("prediction step must be positive");
    }
    const double mvc = report.measurements.mvc(channel);
    const CumulativeMomentum momentum(report.spec);

    Envelope env;
    env.channel = channel;
    env.k = *summary;
    std::vector<double> times;
    const auto steps = static_cast<std::size_t>(std::floor(horizon_min / step_min + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) {
        times.push_back(std::min(static_cast<double>(i) * step_min, horizon_min));
    }
    if (times.back() < horizon_min) {
        times.push_back(horizon_min);
    }
    for (double t : times) {
        const MomentumSplit split = to_newton_meter_minutes(momentum.at(t * kSecondsPerMinute));
        const double m = channel == Channel::agonist ? split.agonist : split.antagonist;
        env.min_k.samples.push_back({t, capacity_closed_form({mvc, env.k.min}, m)});
        env.avg_k.samples.push_back({t, capacity_closed_form({mvc, env.k.mean}, m)});
        env.max_k.samples.push_back({t, capacity_closed_form({mvc, env.k.max}, m)});
    }
    return env;
}

}  // namespace dynfatigue
