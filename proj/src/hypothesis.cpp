#include "annular/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace annular {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

bool depends_on_gradient(const Expr& f) {
    return f.references(Var::gu) || f.references(Var::gv);
}

Verdict classify(double margin, double tol) {
    if (margin > tol) return Verdict::satisfied;
    if (margin < -tol) return Verdict::not_satisfied;
    return Verdict::inconclusive;
}

Verdict conjunction(const std::vector<ConditionResult>& conds) {
    bool any_inconclusive = false;
    for (const auto& c : conds) {
        if (c.verdict == Verdict::not_satisfied) return Verdict::not_satisfied;
        if (c.verdict == Verdict::inconclusive) any_inconclusive = true;
    }
    return any_inconclusive ? Verdict::inconclusive : Verdict::satisfied;
}

struct ConditionInput {
    std::string id;
    std::string description;
    const Expr* f;
    BoxSpec box;
    Extremum mode;
    double threshold;
};

ConditionResult evaluate(const ConditionInput& in, const ScanConfig& scan,
                         HypothesisReport& report) {
    const ScanResult res = scan_extremum(*in.f, in.box, in.mode, scan);
    ConditionResult c{in.id,       in.description, in.mode,      in.box, res.value, res.argpoint,
                      in.threshold, 0.0,           0.0,          Verdict::inconclusive};
    c.margin = in.mode == Extremum::sup ? in.threshold - res.value : res.value - in.threshold;
    c.tolerance = scan.relative_tolerance * std::max(1.0, std::abs(in.threshold));
    c.verdict = classify(c.margin, c.tolerance);

    if (depends_on_gradient(*in.f)) {
        report.truncated = true;
        BoxSpec wide = in.box;
        wide.gu.hi *= 10.0;
        wide.gv.hi *= 10.0;
        const double extended = scan_extremum(*in.f, wide, in.mode, scan).value;
        const bool same = std::abs(extended - res.value) <=
                          1e-6 * std::max(std::abs(res.value), 1e-300);
        report.notes.push_back(in.id + ": extremum with gradients up to 10*Zmax = " +
                               fmt(extended) +
                               (same ? " (unchanged, sampled boundedness in the gradients)"
                                     : " (changed, the truncation matters)"));
    }
    return c;
}

void add_truncation_caveat(HypothesisReport& report, const ReducedSystem& sys, double zmax) {
    if (report.truncated) {
        report.caveats.push_back("gradient arguments scanned on [0, Zmax] with Zmax = " + fmt(zmax) +
                                 "; the conditions quantify over [0, +inf)");
    } else if (!depends_on_gradient(sys.f(Component::first)) &&
               !depends_on_gradient(sys.f(Component::second))) {
        report.notes.push_back("f1 and f2 do not depend on the gradients; truncation is exact");
    }
}

void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw SpecError(std::string(name) + " must be a positive finite number");
    }
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::satisfied: return "satisfied";
        case Verdict::not_satisfied: return "not_satisfied";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

ThresholdFactors threshold_factors(const AnnulusDomain& domain, const WindowPair& w) {
    ThresholdFactors tf{};
    tf.constants = kernel_constants(w.first, w.second);
    tf.sup_p = extremize_p(domain, 0.0, 1.0, Extremum::sup);
    tf.inf_p1 = extremize_p(domain, w.first.a, w.first.b, Extremum::inf);
    tf.inf_p2 = extremize_p(domain, w.second.a, w.second.b, Extremum::inf);
    tf.lambda1 = tf.constants.m1 / tf.sup_p;
    tf.lambda2 = tf.constants.m2 / tf.sup_p;
    tf.Lambda1 = tf.constants.M1 / tf.inf_p1;
    tf.Lambda2 = tf.constants.M2 / tf.inf_p2;
    return tf;
}

BoxSpec omega_box(const AnnulusDomain& domain, double rho1, double rho2, double zmax) {
    return {{domain.R0, domain.R1}, {0.0, rho1}, {0.0, rho2}, {0.0, zmax}, {0.0, zmax}};
}

BoxSpec a_box(const AnnulusDomain& domain, const WindowPair& w, Component c, double s1, double s2,
              double zmax) {
    const double c1 = harnack_c(w.first);
    const double c2 = harnack_c(w.second);
    const ConeWindow& win = c == Component::first ? w.first : w.second;
    const double ra = radial_map(domain, win.a);
    const double rb = radial_map(domain, win.b);
    BoxSpec box{{std::min(ra, rb), std::max(ra, rb)}, {}, {}, {0.0, zmax}, {0.0, zmax}};
    if (c == Component::first) {
        box.u = {s1, s1 / c1};
        box.v = {0.0, s2 / c2};
    } else {
        // u-range of the proof's tilde set
        box.u = {0.0, s1 / c1};
        box.v = {s2, s2 / c2};
    }
    return box;
}

HypothesisReport existence_check(const ReducedSystem& sys, const WindowPair& w,
                                 const ThresholdSpec& spec, const ScanConfig& scan) {
    require_positive(spec.rho1, "rho1");
    require_positive(spec.rho2, "rho2");
    require_positive(spec.s1, "s1");
    require_positive(spec.s2, "s2");
    require_positive(spec.zmax, "zmax");
    const double c1 = harnack_c(w.first);
    const double c2 = harnack_c(w.second);
    if (!(spec.rho1 < c1 * spec.s1) || !(spec.rho2 < c2 * spec.s2)) {
        throw SpecError("incompatible thresholds: need rho_i < c_i s_i (c1 = " + fmt(c1) +
                        ", c2 = " + fmt(c2) + ")");
    }
    const ThresholdFactors tf = threshold_factors(sys.domain(), w);
    const Expr& f1 = sys.f(Component::first);
    const Expr& f2 = sys.f(Component::second);
    const BoxSpec omega = omega_box(sys.domain(), spec.rho1, spec.rho2, spec.zmax);

    HypothesisReport report;
    report.theorem = "existence";
    const std::vector<ConditionInput> inputs{
        {"sup_f1_Omega", "sup of f1 over Omega^{rho1,rho2} < m1 rho1 / sup p", &f1, omega,
         Extremum::sup, tf.lambda1 * spec.rho1},
        {"sup_f2_Omega", "sup of f2 over Omega^{rho1,rho2} < m2 rho2 / sup p", &f2, omega,
         Extremum::sup, tf.lambda2 * spec.rho2},
        {"inf_f1_A1", "inf of f1 over A1^{s1,s2} > M1 s1 / inf_[a1,b1] p", &f1,
         a_box(sys.domain(), w, Component::first, spec.s1, spec.s2, spec.zmax), Extremum::inf,
         tf.Lambda1 * spec.s1},
        {"inf_f2_A2", "inf of f2 over A2^{s1,s2} > M2 s2 / inf_[a2,b2] p", &f2,
         a_box(sys.domain(), w, Component::second, spec.s1, spec.s2, spec.zmax), Extremum::inf,
         tf.Lambda2 * spec.s2},
    };
    for (const auto& in : inputs) report.conditions.push_back(evaluate(in, scan, report));
    report.verdict = conjunction(report.conditions);
    switch (report.verdict) {
        case Verdict::satisfied:
            report.conclusion =
                "all conditions hold on the scanned region: at least one positive radial solution, "
                "located in V_{s1,s2} minus the closure of K_{rho1,rho2}";
            break;
        case Verdict::not_satisfied:
            report.conclusion = "at least one condition fails; no conclusion for these parameters";
            break;
        case Verdict::inconclusive:
            report.conclusion = "a margin lies within the scan tolerance";
            break;
    }
    add_truncation_caveat(report, sys, spec.zmax);
    report.notes.push_back(
        "A2 uses u in [0, s1/c1] (the set on which g2 acts); a literal reading of A2 gives "
        "[0, s2/c2]");
    return report;
}

HypothesisReport multiplicity_check(const ReducedSystem& sys, const WindowPair& w,
                                    const ThresholdSpec& spec, const ScanConfig& scan) {
    if (!spec.theta1 || !spec.theta2) {
        throw SpecError("multiplicity check needs theta1 and theta2");
    }
    require_positive(spec.rho1, "rho1");
    require_positive(spec.rho2, "rho2");
    require_positive(spec.zmax, "zmax");
    const double c1 = harnack_c(w.first);
    const double c2 = harnack_c(w.second);
    const double th1 = *spec.theta1;
    const double th2 = *spec.theta2;
    if (!(spec.rho1 / c1 < spec.s1 && spec.s1 < th1) ||
        !(spec.rho2 / c2 < spec.s2 && spec.s2 < th2)) {
        throw SpecError("multiplicity check needs rho_i / c_i < s_i < theta_i");
    }
    const ThresholdFactors tf = threshold_factors(sys.domain(), w);
    const Expr& f1 = sys.f(Component::first);
    const Expr& f2 = sys.f(Component::second);
    const auto& d = sys.domain();

    HypothesisReport report;
    report.theorem = "multiplicity";
    const std::vector<ConditionInput> inputs{
        {"inf_f1_A1_rho", "inf of f1 over A1^{rho1,rho2} > M1 rho1 / inf_[a1,b1] p", &f1,
         a_box(d, w, Component::first, spec.rho1, spec.rho2, spec.zmax), Extremum::inf,
         tf.Lambda1 * spec.rho1},
        {"inf_f2_A2_rho", "inf of f2 over A2^{rho1,rho2} > M2 rho2 / inf_[a2,b2] p", &f2,
         a_box(d, w, Component::second, spec.rho1, spec.rho2, spec.zmax), Extremum::inf,
         tf.Lambda2 * spec.rho2},
        {"sup_f1_Omega_s", "sup of f1 over Omega^{s1,s2} < m1 s1 / sup p", &f1,
         omega_box(d, spec.s1, spec.s2, spec.zmax), Extremum::sup, tf.lambda1 * spec.s1},
        {"sup_f2_Omega_s", "sup of f2 over Omega^{s1,s2} < m2 s2 / sup p", &f2,
         omega_box(d, spec.s1, spec.s2, spec.zmax), Extremum::sup, tf.lambda2 * spec.s2},
        {"inf_f1_A1_theta", "inf of f1 over A1^{theta1,theta2} > M1 theta1 / inf_[a1,b1] p", &f1,
         a_box(d, w, Component::first, th1, th2, spec.zmax), Extremum::inf, tf.Lambda1 * th1},
        {"inf_f2_A2_theta", "inf of f2 over A2^{theta1,theta2} > M2 theta2 / inf_[a2,b2] p", &f2,
         a_box(d, w, Component::second, th1, th2, spec.zmax), Extremum::inf, tf.Lambda2 * th2},
    };
    for (const auto& in : inputs) report.conditions.push_back(evaluate(in, scan, report));
    report.verdict = conjunction(report.conditions);
    report.conclusion = report.verdict == Verdict::satisfied
                            ? "all conditions hold on the scanned region: at least two positive "
                              "radial solutions"
                            : (report.verdict == Verdict::not_satisfied
                                   ? "at least one condition fails; no conclusion"
                                   : "a margin lies within the scan tolerance");
    add_truncation_caveat(report, sys, spec.zmax);
    return report;
}

HypothesisReport nonexistence_check(const ReducedSystem& sys, const WindowPair& w,
                                    const ScanConfig& scan, double wmax, double zmax) {
    require_positive(wmax, "wmax");
    require_positive(zmax, "zmax");
    const ThresholdFactors tf = threshold_factors(sys.domain(), w);
    const auto& d = sys.domain();
    // w_i ranges over (0, wmax]; the open end is approached at wmax * 1e-9.
    const double floor = wmax * 1e-9;
    const Expr ratio1 = Expr::binary(BinaryOp::div, sys.f(Component::first), Expr::variable(Var::u));
    const Expr ratio2 =
        Expr::binary(BinaryOp::div, sys.f(Component::second), Expr::variable(Var::v));
    const BoxSpec box1{{d.R0, d.R1}, {floor, wmax}, {0.0, wmax}, {0.0, zmax}, {0.0, zmax}};
    const BoxSpec box2{{d.R0, d.R1}, {0.0, wmax}, {floor, wmax}, {0.0, zmax}, {0.0, zmax}};

    HypothesisReport report;
    report.theorem = "nonexistence";
    const std::vector<ConditionInput> inputs{
        {"cond1_f1", "sup of f1/u < m1 / sup p", &ratio1, box1, Extremum::sup, tf.lambda1},
        {"cond1_f2", "sup of f2/v < m2 / sup p", &ratio2, box2, Extremum::sup, tf.lambda2},
        {"cond2_f1", "inf of f1/u > M1 / inf_[a1,b1] p", &ratio1, box1, Extremum::inf,
         tf.Lambda1},
        {"cond2_f2", "inf of f2/v > M2 / inf_[a2,b2] p", &ratio2, box2, Extremum::inf,
         tf.Lambda2},
    };
    for (const auto& in : inputs) report.conditions.push_back(evaluate(in, scan, report));

    const auto& cs = report.conditions;
    const bool cond1 = cs[0].verdict == Verdict::satisfied && cs[1].verdict == Verdict::satisfied;
    const bool cond2 = cs[2].verdict == Verdict::satisfied && cs[3].verdict == Verdict::satisfied;
    if (cond1 || cond2) {
        report.verdict = Verdict::satisfied;
        report.conclusion = std::string(cond1 ? "(cond1)" : "(cond2)") +
                            " holds: only zero solution (scanned region)";
    } else {
        report.verdict = Verdict::inconclusive;
        report.conclusion = "neither (cond1) nor (cond2) holds on the scanned region";
    }
    report.caveats.push_back("states scanned on (0, Wmax] with Wmax = " + fmt(wmax) +
                             "; the conditions quantify over all w_i > 0");
    add_truncation_caveat(report, sys, zmax);
    return report;
}

}  // namespace annular
