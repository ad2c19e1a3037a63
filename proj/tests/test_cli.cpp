#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dynfatigue/commands.hpp"

namespace {

using namespace dynfatigue;
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(DYNFATIGUE_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

struct CliRun {
    int status;
    std::string out;
    std::string err;
};

CliRun run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = std::string(DYNFATIGUE_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

TEST(Config, JsonRoundTrip) {
    RunConfig c;
    c.subject.height_m = 1.71;
    c.motion.theta_high_deg = 60.0;
    c.motion.dt_s = 5e-4;
    c.paths.output = "elsewhere";
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
    EXPECT_EQ(config_from_json(nlohmann::ordered_json::parse(config_to_json(c).dump())), c);
}

TEST(Config, RejectsUnknownSectionsAndBadTypes) {
    EXPECT_THROW(config_from_json(nlohmann::ordered_json::parse(R"({"subjekt":{}})")), ConfigError);
    EXPECT_THROW(config_from_json(nlohmann::ordered_json::parse(R"({"subject":{"height_m":"tall"}})")),
                 ConfigError);
}

TEST(Config, ConvertsDegreesAndValidates) {
    RunConfig c;
    const MotionSpec spec = to_motion_spec(c);
    EXPECT_NEAR(spec.theta_high, 75.0 * std::numbers::pi / 180.0, 1e-15);
    c.motion.dt_s = 0.5;
    EXPECT_THROW(to_motion_spec(c), ConfigError);
    c = RunConfig{};
    c.subject.mass_kg = -3;
    EXPECT_THROW(to_motion_spec(c), ConfigError);
}

TEST(Commands, SimulateWritesAllArtifacts) {
    RunConfig c;
    c.paths.output = scratch("simulate").string();
    const auto files = commands::simulate(c);
    EXPECT_EQ(files.size(), 6u);
    for (const auto& f : files) EXPECT_TRUE(fs::exists(f)) << f;
    const std::string torque = slurp(fs::path(c.paths.output) / "torque.csv");
    std::istringstream lines(torque);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "time_s,angle_rad,velocity_rad_s,acceleration_rad_s2,torque_Nm");
    const double tau0 = std::stod(first.substr(first.rfind(',') + 1));
    EXPECT_NEAR(tau0, 13.54, 5e-3);
    const std::string svg = slurp(fs::path(c.paths.output) / "torque.svg");
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
}

TEST(Commands, SimulateConstantAngle) {
    RunConfig c;
    c.motion.theta_high_deg = c.motion.theta_low_deg;
    c.paths.output = scratch("constant").string();
    commands::simulate(c);
    std::istringstream lines(slurp(fs::path(c.paths.output) / "torque.csv"));
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        EXPECT_NE(line.find(",0,0,13.542916896"), std::string::npos) << line;
    }
}

TEST(Commands, EstimateAllEqualRowsGiveZero) {
    const fs::path dir = scratch("equal");
    {
        std::ofstream m(dir / "m.csv");
        m << "time_min,push_Nm,pull_Nm\n0,30,30\n1,30,30\n2,30,30\n";
    }
    RunConfig c;
    c.motion.half_period_s = 0.5;
    c.paths.measurements = (dir / "m.csv").string();
    c.paths.output = dir.string();
    commands::estimate(c);
    const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    for (const auto& k : j["k_agonist"]) EXPECT_EQ(k.get<double>(), 0.0);
    for (const auto& k : j["k_antagonist"]) EXPECT_EQ(k.get<double>(), 0.0);
}

TEST(Commands, PredictFromSavedReportMatchesInline) {
    const fs::path a = scratch("predict_inline"), b = scratch("predict_saved");
    RunConfig c;
    c.paths.output = a.string();
    commands::predict(c, Channel::agonist, 5.0);
    c.paths.output = b.string();
    const auto report = commands::estimate(c);
    commands::predict(c, Channel::agonist, 5.0, kDefaultEnvelopeStepMin, report.string());
    EXPECT_EQ(slurp(a / "envelope_agonist.csv"), slurp(b / "envelope_agonist.csv"));
    std::istringstream lines(slurp(a / "envelope_agonist.csv"));
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    EXPECT_EQ(header, "time_min,cem_min_k,cem_avg_k,cem_max_k");
    EXPECT_EQ(first, "0,31.46,31.46,31.46");
}

TEST(Cli, DumpConfigRoundTrips) {
    const fs::path dir = scratch("dump");
    const CliRun r = run_cli("simulate --dump-config --height-cm 175 --theta-high-deg 60", dir);
    ASSERT_EQ(r.status, 0) << r.err;
    const RunConfig parsed = config_from_json(nlohmann::ordered_json::parse(r.out));
    EXPECT_DOUBLE_EQ(parsed.subject.height_m, 1.75);
    EXPECT_EQ(parsed.motion.theta_high_deg, 60.0);
    {
        std::ofstream cfg(dir / "cfg.json");
        cfg << r.out;
    }
    const CliRun again = run_cli("simulate --dump-config --config " + (dir / "cfg.json").string(), dir);
    ASSERT_EQ(again.status, 0);
    EXPECT_EQ(again.out, r.out);
}

TEST(Cli, MissingMeasurementsFileFailsWithPath) {
    const fs::path dir = scratch("missing");
    const CliRun r = run_cli("estimate --measurements /no/such/file.csv --out " + dir.string(), dir);
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find("/no/such/file.csv"), std::string::npos);
    EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
    EXPECT_EQ(r.err.rfind("error: io:", 0), 0u);
}

TEST(Cli, NonEstimableChannelFails) {
    const fs::path dir = scratch("antagonist");
    const CliRun r = run_cli("predict --channel antagonist --out " + dir.string(), dir);
    EXPECT_NE(r.status, 0);
    EXPECT_EQ(r.err.rfind("error: estimation:", 0), 0u);
}

TEST(Cli, UnwritableOutputFails) {
    const fs::path dir = scratch("unwritable");
    {
        std::ofstream blocker(dir / "file");
        blocker << "x";
    }
    const CliRun r = run_cli("simulate --out " + (dir / "file" / "sub").string(), dir);
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.err.find((dir / "file" / "sub").string()), std::string::npos);
}

TEST(Cli, PredictZeroHorizon) {
    const fs::path dir = scratch("horizon0");
    const CliRun r = run_cli("predict --horizon-min 0 --out " + dir.string(), dir);
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(slurp(dir / "envelope_agonist.csv"),
              "time_min,cem_min_k,cem_avg_k,cem_max_k\n0,31.46,31.46,31.46\n");
}

}  // namespace
