#pragma once

#include "annular/config.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace annular {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int not_satisfied = 1;
inline constexpr int not_converged = 1;
inline constexpr int inconclusive = 2;
inline constexpr int usage = 3;
}  // namespace exit_code

struct CliOptions {
    std::optional<std::string> out;
    std::optional<int> grid;
    std::optional<double> zmax;
    bool quiet = false;
    /// key=value output only
    bool machine = false;
};

/// --grid and --zmax applied on top of the file values.
ProblemConfig apply_overrides(ProblemConfig config, const CliOptions& options);

int cmd_constants(const ProblemConfig& config, const CliOptions& options, std::ostream& out,
                  std::ostream& err);

/// which: existence, multiplicity or nonexistence.
int cmd_check(const ProblemConfig& config, const std::string& which, const CliOptions& options,
              std::ostream& out, std::ostream& err);

/// Writes the CSV to options.out ("-" for stdout).
int cmd_solve(const ProblemConfig& config, const CliOptions& options, std::ostream& out,
              std::ostream& err);

struct ReproducedValue {
    std::string name;
    double printed;
    double recomputed;

    double relative_error() const;
};

/// The six printed numbers of the worked example next to their recomputation.
std::vector<ReproducedValue> reproduce_example_values();

int cmd_reproduce_example(const CliOptions& options, std::ostream& out, std::ostream& err);

/// Full command line without the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annular
