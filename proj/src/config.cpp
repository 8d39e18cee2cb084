#include "annular/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace annular {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Entry {
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& grammar() {
    static const std::map<std::string, std::set<std::string>> g{
        {"domain", {"n", "R0", "R1"}},
        {"windows", {"a1", "b1", "a2", "b2"}},
        {"thresholds", {"rho1", "rho2", "s1", "s2", "theta1", "theta2", "Zmax", "Wmax"}},
        {"f", {"f1", "f2"}},
        {"numerics",
         {"N", "scan_points", "scan_starts", "damping", "depth", "max_iter", "tol", "initial",
          "initial_level", "initial_csv"}},
    };
    return g;
}

class Reader {
public:
    explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

    const Entry* find(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto e = s->second.find(key);
        return e == s->second.end() ? nullptr : &e->second;
    }

    const Entry& require(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e) throw ConfigError("missing key [" + section + "] " + key, 0, key);
        return *e;
    }

    static double number(const Entry& e, const std::string& key) {
        try {
            const double x = evaluate_constant(e.value);
            if (!std::isfinite(x)) throw ConfigError("value is not finite", e.line, key);
            return x;
        } catch (const ParseError& err) {
            throw ConfigError(std::string("bad number: ") + err.what(), e.line, key);
        } catch (const EvalError& err) {
            throw ConfigError(std::string("bad number: ") + err.what(), e.line, key);
        }
    }

    static int integer(const Entry& e, const std::string& key) {
        const double x = number(e, key);
        if (x != std::floor(x) || std::abs(x) > 1e9) {
            throw ConfigError("expected an integer", e.line, key);
        }
        return static_cast<int>(x);
    }

    void read(const std::string& section, const std::string& key, double& out) const {
        if (const Entry* e = find(section, key)) out = number(*e, key);
    }
    void read(const std::string& section, const std::string& key, int& out) const {
        if (const Entry* e = find(section, key)) out = integer(*e, key);
    }
    void read(const std::string& section, const std::string& key,
              std::optional<double>& out) const {
        if (const Entry* e = find(section, key)) out = number(*e, key);
    }
    void read_text(const std::string& section, const std::string& key,
                   std::optional<std::string>& out) const {
        if (const Entry* e = find(section, key)) out = e->value;
    }

private:
    std::map<std::string, Section> sections_;
};

void check_expression(const std::optional<std::string>& text, const char* key,
                      const std::map<std::string, Section>& sections) {
    if (!text) return;
    try {
        parse(*text);
    } catch (const ParseError& e) {
        const int line = sections.at("f").at(key).line;
        throw ConfigError(std::string("bad expression: ") + e.what(), line, key);
    }
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                        (key.empty() ? "" : key + ": ") + message
                                  : message),
      line_(line),
      key_(std::move(key)) {}

AnnulusDomain ProblemConfig::domain() const {
    try {
        return AnnulusDomain(n, R0, R1);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("[domain] ") + e.what());
    }
}

WindowPair ProblemConfig::windows() const {
    try {
        return {ConeWindow(a1, b1, Kernel::k1), ConeWindow(a2, b2, Kernel::k2)};
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("[windows] ") + e.what());
    }
}

ScanConfig ProblemConfig::scan() const {
    ScanConfig s;
    s.points_per_axis = scan_points;
    s.refine_starts = scan_starts;
    return s;
}

ThresholdSpec ProblemConfig::thresholds(bool need_theta) const {
    auto need = [](const std::optional<double>& x, const char* key) {
        if (!x) throw ConfigError(std::string("missing key [thresholds] ") + key, 0, key);
        return *x;
    };
    ThresholdSpec spec;
    spec.rho1 = need(rho1, "rho1");
    spec.rho2 = need(rho2, "rho2");
    spec.s1 = need(s1, "s1");
    spec.s2 = need(s2, "s2");
    if (need_theta) {
        spec.theta1 = need(theta1, "theta1");
        spec.theta2 = need(theta2, "theta2");
    } else {
        spec.theta1 = theta1;
        spec.theta2 = theta2;
    }
    spec.zmax = zmax;
    spec.wmax = wmax;
    return spec;
}

ReducedSystem ProblemConfig::system() const {
    if (!f1) throw ConfigError("missing key [f] f1", 0, "f1");
    if (!f2) throw ConfigError("missing key [f] f2", 0, "f2");
    return ReducedSystem(domain(), parse(*f1), parse(*f2));
}

SolveConfig ProblemConfig::solve_config() const {
    SolveConfig c;
    c.N = N;
    c.damping = damping;
    c.depth = depth;
    c.max_iterations = max_iter;
    c.tolerance = tol;
    c.initial = initial;
    c.flat_level = initial_level;
    return c;
}

ProblemConfig parse_config(std::string_view text) {
    std::map<std::string, Section> sections;
    std::string current;
    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header", lineno);
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!grammar().contains(current)) {
                throw ConfigError("unknown section [" + current + "]", lineno);
            }
            if (sections.contains(current)) {
                throw ConfigError("duplicate section [" + current + "]", lineno);
            }
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", lineno);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (current.empty()) throw ConfigError("key outside of any section", lineno, key);
        if (!grammar().at(current).contains(key)) {
            throw ConfigError("unknown key in [" + current + "]", lineno, key);
        }
        if (value.empty()) throw ConfigError("empty value", lineno, key);
        if (!sections[current].emplace(key, Entry{value, lineno}).second) {
            throw ConfigError("duplicate key", lineno, key);
        }
    }

    const Reader r(sections);
    ProblemConfig c;
    c.n = Reader::integer(r.require("domain", "n"), "n");
    c.R0 = Reader::number(r.require("domain", "R0"), "R0");
    c.R1 = Reader::number(r.require("domain", "R1"), "R1");
    c.a1 = Reader::number(r.require("windows", "a1"), "a1");
    c.b1 = Reader::number(r.require("windows", "b1"), "b1");
    c.a2 = Reader::number(r.require("windows", "a2"), "a2");
    c.b2 = Reader::number(r.require("windows", "b2"), "b2");
    r.read("thresholds", "rho1", c.rho1);
    r.read("thresholds", "rho2", c.rho2);
    r.read("thresholds", "s1", c.s1);
    r.read("thresholds", "s2", c.s2);
    r.read("thresholds", "theta1", c.theta1);
    r.read("thresholds", "theta2", c.theta2);
    r.read("thresholds", "Zmax", c.zmax);
    r.read("thresholds", "Wmax", c.wmax);
    r.read_text("f", "f1", c.f1);
    r.read_text("f", "f2", c.f2);
    check_expression(c.f1, "f1", sections);
    check_expression(c.f2, "f2", sections);
    r.read("numerics", "N", c.N);
    r.read("numerics", "scan_points", c.scan_points);
    r.read("numerics", "scan_starts", c.scan_starts);
    r.read("numerics", "damping", c.damping);
    r.read("numerics", "depth", c.depth);
    r.read("numerics", "max_iter", c.max_iter);
    r.read("numerics", "tol", c.tol);
    r.read("numerics", "initial_level", c.initial_level);
    r.read_text("numerics", "initial_csv", c.initial_csv);
    if (const Entry* e = r.find("numerics", "initial")) {
        if (e->value == "flat") {
            c.initial = InitialGuess::flat;
        } else if (e->value == "kernel") {
            c.initial = InitialGuess::kernel_shaped;
        } else if (e->value == "user") {
            c.initial = InitialGuess::user;
        } else {
            throw ConfigError("expected flat, kernel or user", e->line, "initial");
        }
    }
    if (c.initial == InitialGuess::user && !c.initial_csv) {
        throw ConfigError("initial = user needs initial_csv", 0, "initial_csv");
    }
    if (!(c.zmax > 0.0)) throw ConfigError("Zmax must be positive", 0, "Zmax");
    if (!(c.wmax > 0.0)) throw ConfigError("Wmax must be positive", 0, "Wmax");
    if (c.scan_points < 2) throw ConfigError("scan_points must be >= 2", 0, "scan_points");
    if (c.scan_starts < 1) throw ConfigError("scan_starts must be >= 1", 0, "scan_starts");
    c.domain();
    c.windows();
    return c;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const ProblemConfig& c) {
    std::ostringstream out;
    auto opt = [&](const char* key, const std::optional<double>& x) {
        if (x) out << key << " = " << num(*x) << '\n';
    };
    out << "[domain]\n"
        << "n = " << c.n << '\n'
        << "R0 = " << num(c.R0) << '\n'
        << "R1 = " << num(c.R1) << "\n\n";
    out << "[windows]\n"
        << "a1 = " << num(c.a1) << '\n'
        << "b1 = " << num(c.b1) << '\n'
        << "a2 = " << num(c.a2) << '\n'
        << "b2 = " << num(c.b2) << "\n\n";
    out << "[thresholds]\n";
    opt("rho1", c.rho1);
    opt("rho2", c.rho2);
    opt("s1", c.s1);
    opt("s2", c.s2);
    opt("theta1", c.theta1);
    opt("theta2", c.theta2);
    out << "Zmax = " << num(c.zmax) << '\n' << "Wmax = " << num(c.wmax) << "\n\n";
    if (c.f1 || c.f2) {
        out << "[f]\n";
        if (c.f1) out << "f1 = " << *c.f1 << '\n';
        if (c.f2) out << "f2 = " << *c.f2 << '\n';
        out << '\n';
    }
    const char* initial = c.initial == InitialGuess::flat   ? "flat"
                          : c.initial == InitialGuess::user ? "user"
                                                            : "kernel";
    out << "[numerics]\n"
        << "N = " << c.N << '\n'
        << "scan_points = " << c.scan_points << '\n'
        << "scan_starts = " << c.scan_starts << '\n'
        << "damping = " << num(c.damping) << '\n'
        << "depth = " << c.depth << '\n'
        << "max_iter = " << c.max_iter << '\n'
        << "tol = " << num(c.tol) << '\n'
        << "initial = " << initial << '\n'
        << "initial_level = " << num(c.initial_level) << '\n';
    if (c.initial_csv) out << "initial_csv = " << *c.initial_csv << '\n';
    return out.str();
}

ProblemConfig example_preset() {
    ProblemConfig c;
    c.n = 3;
    c.R0 = 1.0;
    c.R1 = std::exp(1.0);
    c.a1 = 0.25;
    c.b1 = 0.75;
    c.a2 = 0.5;
    c.b2 = 1.0;
    c.rho1 = 0.1;
    c.rho2 = 0.1;
    c.s1 = 10.0;
    c.s2 = 10.0;
    c.f1 = "exp(-r^2)/6 * (2 - sin(gu^2 + gv^2)) * u^5";
    c.f2 = "exp(-r^2)/pi * atan(1 + gu^2 + gv^2) * v^5";
    return c;
}

std::string unit_forcing(const AnnulusDomain& d) {
    // p(t(r)) = C r^(2(n-1)) in closed form, so 1/p = (1/C) / r^(2(n-1)).
    if (d.n == 2) {
        const double L = std::log(d.R1 / d.R0);
        return num(1.0 / (L * L)) + " / r^2";
    }
    const double k = d.n - 2;
    const double q = d.R0 * d.R1;
    const double A = q * (std::pow(d.R1, k) - std::pow(d.R0, k)) / k;
    const double scale = std::pow(q, 2.0 * (d.n - 1)) / (A * A);
    return num(scale) + " / r^" + std::to_string(2 * (d.n - 1));
}

}  // namespace annular
