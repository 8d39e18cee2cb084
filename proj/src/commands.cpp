#include "annular/commands.hpp"

#include "annular/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

namespace annular {

namespace {

void row(std::ostream& out, const std::string& label, double value) {
    out << "  " << label;
    for (std::size_t i = label.size(); i < 34; ++i) out << ' ';
    out << format_number(value) << '\n';
}

int report_error(std::ostream& err, const std::string& what) {
    err << "error: " << what << '\n';
    return exit_code::usage;
}

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return exit_code::ok;
        case Verdict::not_satisfied: return exit_code::not_satisfied;
        case Verdict::inconclusive: break;
    }
    return exit_code::inconclusive;
}

void emit(const HypothesisReport& report, const CliOptions& o, std::ostream& out) {
    if (o.quiet) return;
    if (!o.machine) {
        write_human(out, report);
        out << '\n';
    }
    machine_block(report).write(out);
}

}  // namespace

ProblemConfig apply_overrides(ProblemConfig c, const CliOptions& o) {
    if (o.grid) c.N = *o.grid;
    if (o.zmax) c.zmax = *o.zmax;
    return c;
}

int cmd_constants(const ProblemConfig& config, const CliOptions& o, std::ostream& out,
                  std::ostream& err) {
    try {
        const AnnulusDomain d = config.domain();
        const WindowPair w = config.windows();
        const ThresholdFactors tf = threshold_factors(d, w);
        const KernelConstants& k = tf.constants;
        KeyValues kv;
        kv.add("n", d.n);
        kv.add("R0", d.R0);
        kv.add("R1", d.R1);
        if (const auto tc = transform_constants(d)) {
            kv.add("A", tc->A);
            kv.add("B", tc->B);
        } else {
            kv.add("A", "omitted");
            kv.add("B", "omitted");
        }
        kv.add("sup_p", tf.sup_p);
        kv.add("inf_p", extremize_p(d, 0.0, 1.0, Extremum::inf));
        kv.add("sup_p_window1", extremize_p(d, w.first.a, w.first.b, Extremum::sup));
        kv.add("inf_p_window1", tf.inf_p1);
        kv.add("sup_p_window2", extremize_p(d, w.second.a, w.second.b, Extremum::sup));
        kv.add("inf_p_window2", tf.inf_p2);
        kv.add("sup_p_sampled", extremize_p_sampled(d, 0.0, 1.0, Extremum::sup));
        kv.add("c1", k.c1);
        kv.add("c2", k.c2);
        kv.add("m1", k.m1);
        kv.add("m2", k.m2);
        kv.add("M1", k.M1);
        kv.add("M2", k.M2);
        kv.add("m1_numeric", little_m_numeric(Kernel::k1));
        kv.add("m2_numeric", little_m_numeric(Kernel::k2));
        kv.add("M1_numeric", big_M_numeric(w.first));
        kv.add("M2_numeric", big_M_numeric(w.second));
        kv.add("lambda1", tf.lambda1);
        kv.add("lambda2", tf.lambda2);
        kv.add("Lambda1", tf.Lambda1);
        kv.add("Lambda2", tf.Lambda2);
        const bool have = config.rho1 && config.rho2 && config.s1 && config.s2;
        if (have) {
            kv.add("threshold_sup_f1", tf.lambda1 * *config.rho1);
            kv.add("threshold_sup_f2", tf.lambda2 * *config.rho2);
            kv.add("threshold_inf_f1", tf.Lambda1 * *config.s1);
            kv.add("threshold_inf_f2", tf.Lambda2 * *config.s2);
        }
        if (o.quiet) return exit_code::ok;
        if (o.machine) {
            kv.write(out);
            return exit_code::ok;
        }
        out << "Domain: n = " << d.n << ", R0 = " << format_number(d.R0)
            << ", R1 = " << format_number(d.R1) << '\n';
        if (const auto tc = transform_constants(d)) {
            row(out, "A", tc->A);
            row(out, "B", tc->B);
        } else {
            out << "  A, B omitted: n = 2 uses r(t) = R0^(1-t) R1^t\n";
        }
        out << "Weight p(t) = r'(t)^2\n";
        row(out, "sup p on [0,1]", tf.sup_p);
        row(out, "inf p on [0,1]", extremize_p(d, 0.0, 1.0, Extremum::inf));
        row(out, "sup p on [a1,b1]", extremize_p(d, w.first.a, w.first.b, Extremum::sup));
        row(out, "inf p on [a1,b1]", tf.inf_p1);
        row(out, "sup p on [a2,b2]", extremize_p(d, w.second.a, w.second.b, Extremum::sup));
        row(out, "inf p on [a2,b2]", tf.inf_p2);
        out << "Kernel constants (closed form / numerical)\n";
        auto pair = [&](const std::string& label, double a, double b) {
            out << "  " << label;
            for (std::size_t i = label.size(); i < 34; ++i) out << ' ';
            out << format_number(a) << " / " << format_number(b) << '\n';
        };
        pair("m1", k.m1, little_m_numeric(Kernel::k1));
        pair("m2", k.m2, little_m_numeric(Kernel::k2));
        pair("M1", k.M1, big_M_numeric(w.first));
        pair("M2", k.M2, big_M_numeric(w.second));
        row(out, "c1", k.c1);
        row(out, "c2", k.c2);
        out << "Threshold factors\n";
        row(out, "lambda1 = m1 / sup p", tf.lambda1);
        row(out, "lambda2 = m2 / sup p", tf.lambda2);
        row(out, "Lambda1 = M1 / inf_[a1,b1] p", tf.Lambda1);
        row(out, "Lambda2 = M2 / inf_[a2,b2] p", tf.Lambda2);
        if (have) {
            out << "Thresholds\n";
            row(out, "m1 rho1 / sup p", tf.lambda1 * *config.rho1);
            row(out, "m2 rho2 / sup p", tf.lambda2 * *config.rho2);
            row(out, "M1 s1 / inf_[a1,b1] p", tf.Lambda1 * *config.s1);
            row(out, "M2 s2 / inf_[a2,b2] p", tf.Lambda2 * *config.s2);
        }
        return exit_code::ok;
    } catch (const std::exception& e) {
        return report_error(err, e.what());
    }
}

int cmd_check(const ProblemConfig& config, const std::string& which, const CliOptions& o,
              std::ostream& out, std::ostream& err) {
    try {
        const ReducedSystem sys = config.system();
        const WindowPair w = config.windows();
        HypothesisReport report;
        if (which == "existence") {
            report = existence_check(sys, w, config.thresholds(false), config.scan());
        } else if (which == "multiplicity") {
            report = multiplicity_check(sys, w, config.thresholds(true), config.scan());
        } else if (which == "nonexistence") {
            report = nonexistence_check(sys, w, config.scan(), config.wmax, config.zmax);
        } else {
            return report_error(err, "unknown check '" + which +
                                         "' (expected existence, multiplicity or nonexistence)");
        }
        emit(report, o, out);
        return exit_for(report.verdict);
    } catch (const std::exception& e) {
        return report_error(err, e.what());
    }
}

int cmd_solve(const ProblemConfig& config, const CliOptions& o, std::ostream& out,
              std::ostream& err) {
    if (!o.out) return report_error(err, "solve needs --out <path> (or --out - for stdout)");
    try {
        const ReducedSystem sys = config.system();
        const WindowPair w = config.windows();
        const ThresholdSpec spec = config.thresholds(false);
        SolveConfig sc = config.solve_config();
        if (sc.initial == InitialGuess::user) {
            std::ifstream in(*config.initial_csv);
            if (!in) return report_error(err, "cannot open initial_csv " + *config.initial_csv);
            sc.user_guess = read_solution_csv(in);
        }
        const SolveResult result = solve(sys, w, spec, sc);

        if (*o.out == "-") {
            write_solution_csv(out, sys, result);
        } else {
            std::ofstream file(*o.out);
            if (!file) return report_error(err, "cannot write " + *o.out);
            write_solution_csv(file, sys, result);
            file.flush();
            if (!file) return report_error(err, "write to " + *o.out + " failed");
            if (!o.quiet) {
                if (o.machine) {
                    machine_block(result).write(out);
                } else {
                    write_human(out, result);
                    out << "  CSV written to " << *o.out << '\n';
                }
            }
        }
        return result.converged ? exit_code::ok : exit_code::not_converged;
    } catch (const std::exception& e) {
        return report_error(err, e.what());
    }
}

double ReproducedValue::relative_error() const {
    return std::abs(recomputed - printed) / std::abs(printed);
}

std::vector<ReproducedValue> reproduce_example_values() {
    const ProblemConfig c = example_preset();
    const AnnulusDomain d = c.domain();
    const WindowPair w = c.windows();
    const ThresholdFactors tf = threshold_factors(d, w);
    const ReducedSystem sys = c.system();
    const double e = std::numbers::e;
    // f1 is smallest on A1 at the outer radius, u = s1 and sin(...) = 1.
    const double r_outer = radial_map(d, w.first.b);
    const double f1_bound =
        sys.f(Component::first).eval(r_outer, *c.s1, 0.0, std::sqrt(std::numbers::pi / 2), 0.0);
    // The printed lower bound for f2, taken literally.
    const double f2_bound = 2.0 * std::exp(-e * e) * std::atan(1.0) / std::numbers::pi *
                            std::pow(*c.s2, 5);
    return {
        {"m1 rho1 / sup p", 0.0366701, tf.lambda1 * *c.rho1},
        {"m2 rho2 / sup p", 0.00916753, tf.lambda2 * *c.rho2},
        {"M1 s1 / inf_[a1,b1] p", 201.236, tf.Lambda1 * *c.s1},
        {"M2 s2 / inf_[a2,b2] p", 21.9044, tf.Lambda2 * *c.s2},
        {"lower bound of f1 on A1", 448.356, f1_bound},
        {"lower bound of f2 on A2", 30.8989, f2_bound},
    };
}

int cmd_reproduce_example(const CliOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<ReproducedValue> values = reproduce_example_values();
        bool all = true;
        KeyValues kv;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const auto& v = values[i];
            const bool ok = v.relative_error() <= 1e-3;
            all = all && ok;
            const std::string p = "value" + std::to_string(i + 1) + ".";
            kv.add(p + "printed", v.printed);
            kv.add(p + "recomputed", v.recomputed);
            kv.add(p + "relative_error", v.relative_error());
        }
        kv.add("all_within_1e-3", all);

        ProblemConfig preset = apply_overrides(example_preset(), o);
        const ReducedSystem sys = preset.system();
        const WindowPair w = preset.windows();
        const HypothesisReport scanned = existence_check(sys, w, preset.thresholds(false),
                                                         preset.scan());
        ProblemConfig variant = preset;
        variant.s2 = 11.0;
        const HypothesisReport fixed = existence_check(sys, w, variant.thresholds(false),
                                                       variant.scan());
        for (const auto& c : scanned.conditions) {
            kv.add("scanned." + c.id + ".extremum", c.extremum);
            kv.add("scanned." + c.id + ".verdict", to_string(c.verdict));
        }
        kv.add("scanned.verdict", to_string(scanned.verdict));
        kv.add("variant_s2_11.verdict", to_string(fixed.verdict));

        if (o.quiet) return all ? exit_code::ok : 1;
        if (o.machine) {
            kv.write(out);
            return all ? exit_code::ok : 1;
        }
        out << "Worked example: n = 3, 1 < r < e, [a1,b1] = [1/4,3/4], [a2,b2] = [1/2,1], "
               "rho = 1/10, s = 10\n\n";
        out << "  quantity                      printed        recomputed     rel. error\n";
        for (const auto& v : values) {
            char line[160];
            std::snprintf(line, sizeof line, "  %-28s  %-13s  %-13s  %s\n", v.name.c_str(),
                          format_number(v.printed).c_str(), format_number(v.recomputed).c_str(),
                          format_number(v.relative_error()).c_str());
            out << line;
        }
        out << "\nScanned extrema on the preset (existence conditions):\n";
        for (const auto& c : scanned.conditions) {
            out << "  " << c.id << ": " << (c.mode == Extremum::sup ? "sup" : "inf") << " = "
                << format_number(c.extremum) << ", threshold " << format_number(c.threshold)
                << " -> " << to_string(c.verdict) << '\n';
        }
        const ConditionResult& f2c = scanned.conditions[3];
        out << "\nNote: the printed lower bound 30.8989 for f2 on A2 is twice the actual "
               "infimum.\n"
               "  f2 = e^(-r^2) atan(1 + ...) v^5 / pi is smallest at r = e, v = s2 and zero "
               "gradients,\n"
               "  where it equals e^(-e^2) s2^5 / 4 = "
            << format_number(f2c.extremum) << " < " << format_number(f2c.threshold)
            << ", so the last condition fails for s2 = 10.\n"
            << "  With s2 = 11 (everything else unchanged) the existence check is "
            << to_string(fixed.verdict) << ".\n";
        out << "\n" << (all ? "All six values reproduced to 1e-3 relative."
                            : "Some values differ by more than 1e-3 relative.")
            << '\n';
        return all ? exit_code::ok : 1;
    } catch (const std::exception& e) {
        return report_error(err, e.what());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Radial solutions of elliptic systems on an annulus", "annular"};
    app.require_subcommand(1);
    std::string config_path;
    CliOptions o;
    std::string which;

    auto add_common = [&](CLI::App* sub, bool with_config) {
        if (with_config) sub->add_option("--config", config_path, "problem config file")->required();
        sub->add_option("--zmax", o.zmax, "gradient truncation for the scans");
        sub->add_flag("--quiet", o.quiet, "no report, exit code only");
        sub->add_flag("--machine", o.machine, "key=value output only");
    };
    CLI::App* constants = app.add_subcommand("constants", "print geometry and kernel constants");
    add_common(constants, true);
    CLI::App* check = app.add_subcommand("check", "check a theorem's hypotheses");
    check->add_option("which", which, "existence | multiplicity | nonexistence")
        ->required()
        ->check(CLI::IsMember({"existence", "multiplicity", "nonexistence"}));
    add_common(check, true);
    CLI::App* solve = app.add_subcommand("solve", "fixed-point iteration for a radial solution");
    add_common(solve, true);
    solve->add_option("--out", o.out, "CSV output path, - for stdout");
    solve->add_option("--grid", o.grid, "grid size N");
    CLI::App* reproduce =
        app.add_subcommand("reproduce-example", "recompute the worked example's numbers");
    add_common(reproduce, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    if (reproduce->parsed()) return cmd_reproduce_example(o, out, err);

    ProblemConfig config;
    try {
        config = apply_overrides(load_config(config_path), o);
    } catch (const std::exception& e) {
        return report_error(err, e.what());
    }
    if (constants->parsed()) return cmd_constants(config, o, out, err);
    if (check->parsed()) return cmd_check(config, which, o, out, err);
    return cmd_solve(config, o, out, err);
}

}  // namespace annular
