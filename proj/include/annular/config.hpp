#pragma once

#include "annular/hammerstein.hpp"
#include "annular/hypothesis.hpp"
#include "annular/scan.hpp"
#include "annular/solver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace annular {

/// Parse or validation failure. line() is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& message, int line = 0, std::string key = {});

    int line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct ProblemConfig {
    // [domain]
    int n = 3;
    double R0 = 1.0;
    double R1 = 2.0;
    // [windows]
    double a1 = 0.25;
    double b1 = 0.75;
    double a2 = 0.5;
    double b2 = 1.0;
    // [thresholds]
    std::optional<double> rho1;
    std::optional<double> rho2;
    std::optional<double> s1;
    std::optional<double> s2;
    std::optional<double> theta1;
    std::optional<double> theta2;
    double zmax = 1e3;
    double wmax = 1e3;
    // [f]
    std::optional<std::string> f1;
    std::optional<std::string> f2;
    // [numerics]
    int N = 512;
    int scan_points = 17;
    int scan_starts = 8;
    double damping = 0.5;
    int depth = 0;
    int max_iter = 500;
    double tol = 1e-10;
    InitialGuess initial = InitialGuess::kernel_shaped;
    double initial_level = 1.0;
    std::optional<std::string> initial_csv;

    bool operator==(const ProblemConfig&) const = default;

    AnnulusDomain domain() const;
    WindowPair windows() const;
    ScanConfig scan() const;

    /// Throw ConfigError naming the first missing key.
    ThresholdSpec thresholds(bool need_theta) const;
    ReducedSystem system() const;
    /// User guesses are not loaded here; see initial_csv.
    SolveConfig solve_config() const;
};

/// INI-style text: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Numeric values are constant DSL expressions (`e`, `1/4`, `2*pi`).
ProblemConfig parse_config(std::string_view text);
ProblemConfig load_config(const std::string& path);

/// Text that parse_config maps back to an identical ProblemConfig.
std::string serialize(const ProblemConfig& config);

/// The worked example: n = 3 on 1 < r < e, windows [1/4,3/4], [1/2,1],
/// rho = 1/10, s = 10.
ProblemConfig example_preset();

/// DSL text for 1/p(t(r)), the forcing that makes g identically 1.
std::string unit_forcing(const AnnulusDomain& domain);

}  // namespace annular
