#pragma once

#include "annular/expr.hpp"
#include "annular/geometry.hpp"
#include "annular/grid.hpp"
#include "annular/kernels.hpp"

#include <optional>
#include <stdexcept>
#include <utility>

namespace annular {

/// Component 1 is u (kernel k1, weight t(1-t)), component 2 is v (kernel k2, weight t).
enum class Component { first = 1, second = 2 };

constexpr Kernel kernel_of(Component c) {
    return c == Component::first ? Kernel::k1 : Kernel::k2;
}

/// Weight of the derivative norm: t(1-t) for the first component, t for the second.
double omega(Component c, double t);

/// Failure while evaluating g or the integral operator; carries t and, from
/// apply_T, the node index.
class OperatorError : public std::runtime_error {
public:
    OperatorError(const std::string& message, double t, std::optional<std::size_t> node = {});

    double t() const { return t_; }
    std::optional<std::size_t> node() const { return node_; }

private:
    double t_;
    std::optional<std::size_t> node_;
};

/// The ODE system on [0,1] obtained from the PDE system on the annulus:
///   -u'' = g1(t, u, v, |u'|, |v'|),  -v'' = g2(...),  u(0)=u(1)=v(0)=v'(1)=0,
/// with g_i(t, w1, w2, z1, z2) = p(t) f_i(r(t), w1, w2, z1/r'(t), z2/r'(t)).
class ReducedSystem {
public:
    ReducedSystem(AnnulusDomain domain, Expr f1, Expr f2);

    const AnnulusDomain& domain() const { return domain_; }
    const Expr& f(Component c) const { return c == Component::first ? f1_ : f2_; }

    /// g_i. Throws OperatorError when f_i fails to evaluate.
    double g(Component c, double t, double w1, double w2, double z1, double z2) const;

private:
    AnnulusDomain domain_;
    Expr f1_;
    Expr f2_;
};

inline double compose_g(const ReducedSystem& sys, Component c, double t, double w1, double w2,
                        double z1, double z2) {
    return sys.g(c, t, w1, w2, z1, z2);
}

/// T = (T1, T2) with T_i(u,v)(t) = int_0^1 k_i(t,s) g_i(s, u, v, |u'|, |v'|) ds.
/// Each node's integral is split exactly at s = t; derivatives come from dk_i/dt.
/// Inputs must be nonnegative (up to rounding).
std::pair<GridFunction, GridFunction> apply_T(const ReducedSystem& sys, const GridFunction& u,
                                              const GridFunction& v);

struct Norms {
    double sup;
    double weighted_derivative;

    /// max(sup, weighted_derivative), the norm of C^1_omega.
    double full() const { return sup > weighted_derivative ? sup : weighted_derivative; }
};

/// Sup norm over nodes and sup of omega|w'| over interior nodes.
Norms norms(const GridFunction& w, Component c);

/// Minimum of w over [a,b]: nodes inside the window plus interpolated endpoint values.
double window_min(const GridFunction& w, double a, double b);

struct ConeMembershipReport {
    double sup_norm;
    double weighted_deriv_norm;
    double window_min;
    double harnack_c;
    double tolerance;
    bool is_nonneg;
    bool harnack_ok;
    bool derivative_ok;

    bool member() const { return is_nonneg && harnack_ok && derivative_ok; }
};

/// Membership test for the cone K_i. Default tolerance is 1e-10 (1 + sup norm).
ConeMembershipReport cone_check(const GridFunction& w, const ConeWindow& window,
                                std::optional<double> tolerance = {});

}  // namespace annular
