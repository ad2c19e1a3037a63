// dynfatigue: simulate the elbow cycle, estimate fatigue rates, predict capacity.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynfatigue/commands.hpp"

namespace {

using namespace dynfatigue;

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> out;
    std::optional<std::string> measurements;
    std::optional<double> height_m, height_cm, mass_kg;
    std::optional<double> theta_low_deg, theta_high_deg, half_period_s, bar_mass_kg, dt_s, gravity;
    bool dump_config = false;

    RunConfig resolve() const {
        RunConfig c = config_path ? load_config_file(*config_path) : RunConfig{};
        if (height_cm) c.subject.height_m = *height_cm / 100.0;
        if (height_m) c.subject.height_m = *height_m;
        if (mass_kg) c.subject.mass_kg = *mass_kg;
        if (theta_low_deg) c.motion.theta_low_deg = *theta_low_deg;
        if (theta_high_deg) c.motion.theta_high_deg = *theta_high_deg;
        if (half_period_s) c.motion.half_period_s = *half_period_s;
        if (bar_mass_kg) c.motion.bar_mass_kg = *bar_mass_kg;
        if (dt_s) c.motion.dt_s = *dt_s;
        if (gravity) c.motion.gravity_m_s2 = *gravity;
        if (measurements) c.paths.measurements = *measurements;
        if (out) c.paths.output = *out;
        return c;
    }
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_flag("--dump-config", o.dump_config, "Print the effective configuration and exit");
    cmd->add_option("--measurements", o.measurements, "Measurement CSV (time_min,push_Nm,pull_Nm)");
    auto* hm = cmd->add_option("--height-m", o.height_m, "Subject height [m]");
    cmd->add_option("--height-cm", o.height_cm, "Subject height [cm]")->excludes(hm);
    cmd->add_option("--mass-kg", o.mass_kg, "Subject mass [kg]");
    cmd->add_option("--theta-low-deg", o.theta_low_deg, "Lower joint angle [deg]");
    cmd->add_option("--theta-high-deg", o.theta_high_deg, "Upper joint angle [deg]");
    cmd->add_option("--half-period-s", o.half_period_s, "Duration of each half-cycle [s]");
    cmd->add_option("--bar-mass-kg", o.bar_mass_kg, "Held load [kg]");
    cmd->add_option("--dt-s", o.dt_s, "Time step [s]");
    cmd->add_option("--gravity", o.gravity, "Gravity [m/s^2]");
}

int fail(const char* kind, const std::string& message, int code) {
    std::string line = message;
    for (char& ch : line) {
        if (ch == '\n' || ch == '\r') ch = ' ';
    }
    std::cerr << "error: " << kind << ": " << line << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint-level dynamic muscle fatigue toolkit"};
    app.require_subcommand(1);

    Overrides sim_opts, est_opts, pred_opts;
    auto* sim = app.add_subcommand("simulate", "Write trajectory, torque and momentum for one cycle");
    add_common(sim, sim_opts);
    auto* est = app.add_subcommand("estimate", "Estimate per-row fatigue rates into report.json");
    add_common(est, est_opts);
    auto* pred = app.add_subcommand("predict", "Predict exertable torque under min/mean/max k");
    add_common(pred, pred_opts);
    std::string channel = "agonist";
    double horizon = 5.0;
    double step = kDefaultEnvelopeStepMin;
    std::optional<std::string> report_path;
    pred->add_option("--channel", channel, "agonist or antagonist")
        ->check(CLI::IsMember({"agonist", "antagonist"}));
    pred->add_option("--horizon-min", horizon, "Prediction horizon [min]");
    pred->add_option("--step-min", step, "Prediction sample spacing [min]");
    pred->add_option("--report", report_path, "Use an existing report.json instead of estimating");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        const Overrides& o = sim->parsed() ? sim_opts : est->parsed() ? est_opts : pred_opts;
        const RunConfig config = o.resolve();
        if (o.dump_config) {
            std::cout << config_to_json(config).dump(2) << '\n';
            return 0;
        }
        if (sim->parsed()) {
            for (const auto& p : commands::simulate(config)) std::cout << p.string() << '\n';
        } else if (est->parsed()) {
            std::cout << commands::estimate(config).string() << '\n';
        } else {
            for (const auto& p : commands::predict(config, parse_channel(channel), horizon, step,
                                                   report_path)) {
                std::cout << p.string() << '\n';
            }
        }
    } catch (const ConfigError& e) {
        return fail("config", e.what(), 2);
    } catch (const ParseError& e) {
        return fail("parse", e.what(), 3);
    } catch (const IoError& e) {
        return fail("io", e.what(), 4);
    } catch (const EstimationError& e) {
        return fail("estimation", e.what(), 5);
    } catch (const DomainError& e) {
        return fail("domain", e.what(), 5);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
