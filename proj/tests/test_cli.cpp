#include "annular/commands.hpp"
#include "annular/config.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace annular;

namespace {

const std::string kConfigs = ANNULAR_CONFIG_DIR;

std::string config_path(const std::string& name) { return kConfigs + "/" + name; }

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / ("annular_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

std::string with_line(std::string text, const std::string& after, const std::string& line) {
    const auto at = text.find(after);
    text.insert(text.find('\n', at) + 1, line + "\n");
    return text;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    if (at != std::string::npos) text.replace(at, from.size(), to);
    return text;
}

const char* kMinimal = R"([domain]
n = 3
R0 = 1
R1 = 2
[windows]
a1 = 1/4
b1 = 3/4
a2 = 1/2
b2 = 1
[f]
f1 = u
f2 = v
)";

// CSV rows after the header as numbers
std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<double>> rows;
    bool body = false;
    while (std::getline(in, line)) {
        if (line.rfind("t,", 0) == 0) {
            body = true;
            continue;
        }
        if (!body || line.empty()) continue;
        std::vector<double> row;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Config, ShippedFilesParse) {
    for (const char* name : {"example.ini", "unit_forcing.ini", "zero.ini", "linear.ini"}) {
        EXPECT_NO_THROW(load_config(config_path(name))) << name;
    }
    EXPECT_EQ(load_config(config_path("example.ini")), example_preset());
}

TEST(Config, MinimalDefaults) {
    const ProblemConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.n, 3);
    EXPECT_DOUBLE_EQ(c.a1, 0.25);
    EXPECT_FALSE(c.rho1);
    EXPECT_EQ(c.N, 512);
    EXPECT_EQ(c.initial, InitialGuess::kernel_shaped);
    EXPECT_THROW(c.thresholds(false), ConfigError);
}

TEST(Config, SerializeRoundTrip) {
    ProblemConfig c = example_preset();
    EXPECT_EQ(parse_config(serialize(c)), c);
    c.theta1 = 3.0;
    c.theta2 = 1.0 / 3.0;
    c.depth = 4;
    c.initial = InitialGuess::flat;
    c.initial_level = 0.7;
    c.R1 = std::numbers::pi;
    EXPECT_EQ(parse_config(serialize(c)), c);
    c.initial = InitialGuess::user;
    c.initial_csv = "guess.csv";
    EXPECT_EQ(parse_config(serialize(c)), c);
    const ProblemConfig m = parse_config(kMinimal);
    EXPECT_EQ(parse_config(serialize(m)), m);
}

TEST(Config, Diagnostics) {
    auto message = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::pair{e.line(), std::string(e.what())};
        }
        return std::pair{-1, std::string()};
    };
    auto [line, msg] = message(replace(kMinimal, "R1 = 2\n", ""));
    EXPECT_NE(msg.find("R1"), std::string::npos) << msg;

    std::tie(line, msg) = message(with_line(kMinimal, "R0 = 1", "colour = red"));
    EXPECT_EQ(line, 4);
    EXPECT_NE(msg.find("colour"), std::string::npos) << msg;

    std::tie(line, msg) = message(replace(kMinimal, "b1 = 3/4", "b1 = 3/"));
    EXPECT_EQ(line, 7);
    EXPECT_NE(msg.find("b1"), std::string::npos) << msg;

    std::tie(line, msg) = message(replace(kMinimal, "f1 = u", "f1 = u + w"));
    EXPECT_EQ(line, 11);
    EXPECT_NE(msg.find("w"), std::string::npos) << msg;

    std::tie(line, msg) = message(replace(kMinimal, "b1 = 3/4", "b1 = 1/4"));
    EXPECT_NE(msg.find("degenerate window"), std::string::npos) << msg;

    std::tie(line, msg) = message(replace(kMinimal, "n = 3", "n = 2.5"));
    EXPECT_EQ(line, 2);

    std::tie(line, msg) = message(std::string(kMinimal) + "[extra]\n");
    EXPECT_NE(msg.find("extra"), std::string::npos) << msg;
}

TEST(Config, UnitForcingMakesReducedForcingOne) {
    for (int n : {2, 3, 5}) {
        const AnnulusDomain d(n, 0.5, 2.5);
        const ReducedSystem sys(d, parse(unit_forcing(d)), parse("0"));
        for (double t : {0.0, 0.3, 0.9, 1.0}) {
            EXPECT_NEAR(sys.g(Component::first, t, 0.0, 0.0, 0.0, 0.0), 1.0, 1e-12) << n << " " << t;
        }
    }
}

TEST(Cli, ExistenceOnThePresetFailsOnlyOnTheSecondInfimum) {
    const CliRun r = run({"check", "existence", "--config", config_path("example.ini"), "--machine"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("verdict=not_satisfied"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("condition.inf_f2_A2.verdict=not_satisfied"), std::string::npos);
    EXPECT_NE(r.out.find("condition.sup_f1_Omega.verdict=satisfied"), std::string::npos);
}

TEST(Cli, ExistenceWithLargerS2Holds) {
    const std::string text = replace(
        replace(serialize(example_preset()), "s2 = 10\n", "s2 = 11\n"), "s2 = 10.", "s2 = 11.");
    const std::string path = write_temp("s2.ini", text);
    ASSERT_EQ(load_config(path).s2, 11.0);
    const CliRun r = run({"check", "existence", "--config", path});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_EQ(run({"check", "existence", "--config", path, "--quiet"}).out, "");
}

TEST(Cli, NonexistenceVerdicts) {
    EXPECT_EQ(run({"check", "nonexistence", "--config", config_path("linear.ini")}).code, 0);
    const std::string path = write_temp("one.ini", replace(replace(kMinimal, "f1 = u", "f1 = 1"),
                                                           "f2 = v", "f2 = 1"));
    EXPECT_EQ(run({"check", "nonexistence", "--config", path}).code, 2);
}

TEST(Cli, MultiplicityNeedsTheta) {
    const CliRun r = run({"check", "multiplicity", "--config", config_path("example.ini")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("theta"), std::string::npos) << r.err;
}

TEST(Cli, DegenerateWindowIsAUsageError) {
    const std::string path = write_temp("degenerate.ini", replace(kMinimal, "b1 = 3/4", "b1 = 1/4"));
    const CliRun r = run({"constants", "--config", path});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("degenerate window"), std::string::npos) << r.err;
}

TEST(Cli, Constants) {
    const CliRun r = run({"constants", "--config", config_path("example.ini"), "--machine"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("sup_p=21.8161323"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("M1=16"), std::string::npos) << r.out;

    const std::string path = write_temp("n2.ini", replace(kMinimal, "n = 3", "n = 2"));
    const CliRun two = run({"constants", "--config", path});
    EXPECT_EQ(two.code, 0);
    EXPECT_NE(two.out.find("omitted"), std::string::npos) << two.out;
}

TEST(Cli, SolveUnitForcing) {
    const CliRun r = run({"solve", "--config", config_path("unit_forcing.ini"), "--out", "-", "--quiet"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 513u);
    double max_u = 0.0;
    for (const auto& row : rows) {
        ASSERT_EQ(row.size(), 6u);
        max_u = std::max(max_u, row[2]);
    }
    EXPECT_NEAR(max_u, 0.125, 1e-6);
    EXPECT_NEAR(rows.back()[3], 0.5, 1e-8);
    EXPECT_NEAR(rows.back()[1], std::numbers::e, 1e-8);
}

TEST(Cli, SolveZeroGivesZeroColumns) {
    const std::string out =
        (std::filesystem::temp_directory_path() / "annular_test_zero.csv").string();
    const CliRun r = run({"solve", "--config", config_path("zero.ini"), "--out", out, "--grid", "64"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("inside K"), std::string::npos) << r.out;
    std::ifstream in(out);
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    const auto rows = csv_rows(text);
    ASSERT_EQ(rows.size(), 65u);
    for (const auto& row : rows) {
        for (int k = 2; k < 6; ++k) EXPECT_EQ(row[k], 0.0);
    }
}

TEST(Cli, SolveFromUserCsv) {
    const std::string guess =
        (std::filesystem::temp_directory_path() / "annular_test_guess.csv").string();
    ASSERT_EQ(run({"solve", "--config", config_path("unit_forcing.ini"), "--out", guess, "--quiet"})
                  .code,
              0);
    std::string text = serialize(load_config(config_path("unit_forcing.ini")));
    text = replace(text, "initial = kernel", "initial = user\ninitial_csv = " + guess);
    const std::string path = write_temp("user.ini", text);
    const CliRun r = run({"solve", "--config", path, "--out", "-", "--machine"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("converged=1"), std::string::npos) << r.out;
}

TEST(Cli, SolvePresetReportsResiduals) {
    const CliRun r = run({"solve", "--config", config_path("example.ini"), "--out",
                       (std::filesystem::temp_directory_path() / "annular_test_p.csv").string(),
                       "--grid", "128", "--machine"});
    EXPECT_TRUE(r.code == 0 || r.code == 1) << r.err;
    for (const char* key : {"status=", "fixed_point_residual=", "ode_residual_u=", "pde_residual_v=",
                            "localization="}) {
        EXPECT_NE(r.out.find(key), std::string::npos) << key;
    }
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 3);
    EXPECT_EQ(run({"frobnicate"}).code, 3);
    EXPECT_EQ(run({"check", "uniqueness", "--config", config_path("example.ini")}).code, 3);
    EXPECT_EQ(run({"constants"}).code, 3);
    EXPECT_EQ(run({"constants", "--config", "/nonexistent/file.ini"}).code, 3);
    EXPECT_EQ(run({"solve", "--config", config_path("zero.ini")}).code, 3);
    EXPECT_EQ(run({"solve", "--config", config_path("zero.ini"), "--grid", "63", "--out", "-"}).code,
              3);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ReproduceExample) {
    const CliRun r = run({"reproduce-example"});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    for (const ReproducedValue& v : reproduce_example_values()) {
        EXPECT_LT(v.relative_error(), 1e-3) << v.name;
    }
}

TEST(Cli, Deterministic) {
    const std::vector<std::string> args{"check", "existence", "--config",
                                        config_path("example.ini"), "--machine"};
    EXPECT_EQ(run(args).out, run(args).out);
    const std::vector<std::string> solve_args{"solve", "--config", config_path("example.ini"),
                                              "--out", "-", "--grid", "64", "--quiet"};
    EXPECT_EQ(run(solve_args).out, run(solve_args).out);
}
