#include "annular/report.hpp"

#include <cstdio>
#include <ostream>

namespace annular {

namespace {

const char* mode_name(Extremum m) {
    return m == Extremum::sup ? "sup" : "inf";
}

std::string range(const Interval& iv) {
    return "[" + format_number(iv.lo) + ", " + format_number(iv.hi) + "]";
}

}  // namespace

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void KeyValues::add(const std::string& key, double value) {
    entries_.emplace_back(key, format_number(value));
}

void KeyValues::add(const std::string& key, int value) {
    entries_.emplace_back(key, std::to_string(value));
}

void KeyValues::add(const std::string& key, bool value) {
    entries_.emplace_back(key, value ? "true" : "false");
}

void KeyValues::add(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void KeyValues::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

void write_human(std::ostream& out, const HypothesisReport& report) {
    out << "Hypothesis check: " << report.theorem << '\n';
    for (const auto& c : report.conditions) {
        out << "  " << c.id << ": " << c.description << '\n'
            << "    " << mode_name(c.mode) << " = " << format_number(c.extremum)
            << "   threshold = " << format_number(c.threshold)
            << "   margin = " << format_number(c.margin) << "   -> " << to_string(c.verdict)
            << '\n'
            << "    box: r " << range(c.box.r) << ", u " << range(c.box.u) << ", v "
            << range(c.box.v) << ", |grad u| " << range(c.box.gu) << ", |grad v| "
            << range(c.box.gv) << '\n'
            << "    attained near (r, u, v, |grad u|, |grad v|) = ("
            << format_number(c.argpoint.r) << ", " << format_number(c.argpoint.u) << ", "
            << format_number(c.argpoint.v) << ", " << format_number(c.argpoint.gu) << ", "
            << format_number(c.argpoint.gv) << ")\n";
    }
    out << "Verdict: " << to_string(report.verdict) << '\n';
    out << "Conclusion: " << report.conclusion << '\n';
    for (const auto& c : report.caveats) out << "Caveat: " << c << '\n';
    for (const auto& n : report.notes) out << "Note: " << n << '\n';
}

KeyValues machine_block(const HypothesisReport& report) {
    KeyValues kv;
    kv.add("theorem", report.theorem);
    kv.add("verdict", to_string(report.verdict));
    kv.add("truncated", report.truncated);
    for (const auto& c : report.conditions) {
        const std::string p = "condition." + c.id + ".";
        kv.add(p + "mode", mode_name(c.mode));
        kv.add(p + "extremum", c.extremum);
        kv.add(p + "threshold", c.threshold);
        kv.add(p + "margin", c.margin);
        kv.add(p + "verdict", to_string(c.verdict));
    }
    kv.add("caveats", static_cast<int>(report.caveats.size()));
    return kv;
}

void write_human(std::ostream& out, const SolveResult& r) {
    out << "Solve: " << to_string(r.status) << " after " << r.iterations << " iterations\n";
    if (!r.message.empty()) out << "  " << r.message << '\n';
    out << "  fixed-point residual  " << format_number(r.fixed_point_residual) << '\n'
        << "  ODE residual (u, v)   " << format_number(r.ode_residual_u) << ", "
        << format_number(r.ode_residual_v) << '\n'
        << "  PDE residual (u, v)   " << format_number(r.pde.residual_u) << ", "
        << format_number(r.pde.residual_v) << " at " << r.pde.samples << " radii\n"
        << "  boundary values       u(R0)=" << format_number(r.pde.u_at_R0)
        << " u(R1)=" << format_number(r.pde.u_at_R1) << " v(R0)=" << format_number(r.pde.v_at_R0)
        << " v_r(R1)=" << format_number(r.pde.dv_dr_at_R1)
        << (r.pde.boundary_ok ? " (ok)" : " (outside tolerance)") << '\n'
        << "  norms ||u||, ||v||    " << format_number(r.localization.norm_u) << ", "
        << format_number(r.localization.norm_v) << '\n'
        << "  window minima         " << format_number(r.localization.window_min_u) << ", "
        << format_number(r.localization.window_min_v) << '\n'
        << "  localization          " << to_string(r.localization.region) << '\n';
    if (r.converged) {
        out << "  This is a candidate solution of the discretized problem; it does not prove "
               "existence.\n";
    }
}

KeyValues machine_block(const SolveResult& r) {
    KeyValues kv;
    kv.add("status", to_string(r.status));
    kv.add("converged", r.converged);
    kv.add("iterations", r.iterations);
    kv.add("N", r.u.panels());
    kv.add("fixed_point_residual", r.fixed_point_residual);
    kv.add("ode_residual_u", r.ode_residual_u);
    kv.add("ode_residual_v", r.ode_residual_v);
    kv.add("pde_residual_u", r.pde.residual_u);
    kv.add("pde_residual_v", r.pde.residual_v);
    kv.add("boundary_ok", r.pde.boundary_ok);
    kv.add("norm_u", r.localization.norm_u);
    kv.add("norm_v", r.localization.norm_v);
    kv.add("window_min_u", r.localization.window_min_u);
    kv.add("window_min_v", r.localization.window_min_v);
    kv.add("localization", to_string(r.localization.region));
    return kv;
}

}  // namespace annular
