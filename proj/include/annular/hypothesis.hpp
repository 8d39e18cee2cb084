#pragma once

#include "annular/hammerstein.hpp"
#include "annular/kernels.hpp"
#include "annular/scan.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace annular {

struct WindowPair {
    ConeWindow first;   // [a1,b1] for k1
    ConeWindow second;  // [a2,b2] for k2
};

struct ThresholdSpec {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    std::optional<double> theta1;
    std::optional<double> theta2;
    /// Gradient arguments are scanned on [0, zmax].
    double zmax = 1e3;
    /// State truncation for the non-existence scan.
    double wmax = 1e3;

    bool operator==(const ThresholdSpec&) const = default;
};

/// Raised before any scanning when ThresholdSpec violates the ordering a theorem requires.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Geometry- and window-dependent factors of every threshold:
/// lambda_i = m_i / sup_[0,1] p, Lambda_i = M_i / inf_[a_i,b_i] p.
struct ThresholdFactors {
    KernelConstants constants;
    double sup_p;
    double inf_p1;
    double inf_p2;
    double lambda1;
    double lambda2;
    double Lambda1;
    double Lambda2;
};

ThresholdFactors threshold_factors(const AnnulusDomain& domain, const WindowPair& windows);

/// [R0,R1] x [0,rho1] x [0,rho2] x [0,zmax]^2.
BoxSpec omega_box(const AnnulusDomain& domain, double rho1, double rho2, double zmax);

/// A_i^{s1,s2}: r over the image of [a_i,b_i], w_i in [s_i, s_i/c_i], the other
/// state in [0, s_j/c_j], gradients in [0,zmax].
BoxSpec a_box(const AnnulusDomain& domain, const WindowPair& windows, Component c, double s1,
              double s2, double zmax);

enum class Verdict { satisfied, not_satisfied, inconclusive };

const char* to_string(Verdict v);

struct ConditionResult {
    std::string id;
    std::string description;
    Extremum mode;
    BoxSpec box;
    double extremum;
    EvalPoint argpoint;
    double threshold;
    /// Positive when the strict inequality holds.
    double margin;
    double tolerance;
    Verdict verdict;
};

struct HypothesisReport {
    std::string theorem;
    std::vector<ConditionResult> conditions;
    Verdict verdict = Verdict::inconclusive;
    std::string conclusion;
    /// Set when a nonlinearity depends on the gradients, so the scan covers only [0, zmax].
    bool truncated = false;
    std::vector<std::string> caveats;
    std::vector<std::string> notes;
};

/// Sufficient conditions for a positive radial solution:
///   sup_{Omega^{rho}} f_i < lambda_i rho_i  and  inf_{A_i^{s}} f_i > Lambda_i s_i.
/// Throws SpecError unless rho_i < c_i s_i.
HypothesisReport existence_check(const ReducedSystem& sys, const WindowPair& windows,
                                 const ThresholdSpec& spec, const ScanConfig& scan = {});

/// Two positive solutions; requires rho_i / c_i < s_i < theta_i.
HypothesisReport multiplicity_check(const ReducedSystem& sys, const WindowPair& windows,
                                    const ThresholdSpec& spec, const ScanConfig& scan = {});

/// Either f_i < lambda_i w_i for all w_i > 0 (cond1) or f_i > Lambda_i w_i (cond2)
/// rules out nonzero solutions. Only the region w in (0, wmax], z in [0, zmax]
/// is scanned; the verdict is inconclusive when neither holds there.
HypothesisReport nonexistence_check(const ReducedSystem& sys, const WindowPair& windows,
                                    const ScanConfig& scan, double wmax, double zmax);

}  // namespace annular
