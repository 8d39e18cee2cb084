#include "annular/hammerstein.hpp"

#include "annular/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace annular {

double omega(Component c, double t) {
    return c == Component::first ? t * (1.0 - t) : t;
}

OperatorError::OperatorError(const std::string& message, double t, std::optional<std::size_t> node)
    : std::runtime_error(message), t_(t), node_(node) {}

ReducedSystem::ReducedSystem(AnnulusDomain domain, Expr f1, Expr f2)
    : domain_(domain), f1_(std::move(f1)), f2_(std::move(f2)) {}

double ReducedSystem::g(Component c, double t, double w1, double w2, double z1, double z2) const {
    const double r = radial_map(domain_, t);
    const double dr = std::abs(radial_map_derivative(domain_, t));
    try {
        return weight_p(domain_, t) * f(c).eval(EvalPoint{r, w1, w2, z1 / dr, z2 / dr});
    } catch (const EvalError& e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, " (t=%.9g)", t);
        throw OperatorError(std::string("f") + (c == Component::first ? "1" : "2") + ": " +
                                e.what() + buf,
                            t);
    }
}

namespace {

double nonneg(double x, double tol, std::size_t j) {
    if (x < -tol) {
        throw std::invalid_argument("apply_T input is negative at node " + std::to_string(j));
    }
    return std::max(x, 0.0);
}

}  // namespace

std::pair<GridFunction, GridFunction> apply_T(const ReducedSystem& sys, const GridFunction& u,
                                              const GridFunction& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("u and v live on different grids");
    }
    const std::size_t n = u.size();
    const std::size_t N = n - 1;
    const double h = u.spacing();
    const double tol_u = 1e-12 * (1.0 + norms(u, Component::first).sup);
    const double tol_v = 1e-12 * (1.0 + norms(v, Component::second).sup);

    // Integrands of the factored kernels: s g1, (1-s) g1, s g2, g2.
    std::vector<double> sg1(n), tg1(n), sg2(n), g2v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = u.node(j);
        const double w1 = nonneg(u.value(j), tol_u, j);
        const double w2 = nonneg(v.value(j), tol_v, j);
        const double z1 = std::abs(u.derivative(j));
        const double z2 = std::abs(v.derivative(j));
        double g1 = 0.0;
        double g2 = 0.0;
        try {
            g1 = sys.g(Component::first, s, w1, w2, z1, z2);
            g2 = sys.g(Component::second, s, w1, w2, z1, z2);
        } catch (const OperatorError& e) {
            throw OperatorError(std::string(e.what()) + " at node " + std::to_string(j), s, j);
        }
        if (!std::isfinite(g1) || !std::isfinite(g2)) {
            throw OperatorError("non-finite integrand at node " + std::to_string(j), s, j);
        }
        sg1[j] = s * g1;
        tg1[j] = (1.0 - s) * g1;
        sg2[j] = s * g2;
        g2v[j] = g2;
    }

    // Left integrals int_0^t and right integrals int_t^1, split at the node.
    const auto P1 = cumulative_simpson(sg1, h);
    const auto C1 = cumulative_simpson(tg1, h);
    const auto P2 = cumulative_simpson(sg2, h);
    const auto C2 = cumulative_simpson(g2v, h);

    std::vector<double> t1(n), dt1(n), t2(n), dt2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = u.node(j);
        const double q1 = j == N ? 0.0 : C1[N] - C1[j];
        const double q2 = j == N ? 0.0 : C2[N] - C2[j];
        t1[j] = (1.0 - t) * P1[j] + t * q1;
        dt1[j] = -P1[j] + q1;
        t2[j] = P2[j] + t * q2;
        dt2[j] = q2;
    }
    return {GridFunction(std::move(t1), std::move(dt1)), GridFunction(std::move(t2), std::move(dt2))};
}

Norms norms(const GridFunction& w, Component c) {
    Norms out{0.0, 0.0};
    const std::size_t n = w.size();
    for (std::size_t j = 0; j < n; ++j) {
        out.sup = std::max(out.sup, std::abs(w.value(j)));
        if (j > 0 && j + 1 < n) {
            out.weighted_derivative =
                std::max(out.weighted_derivative, omega(c, w.node(j)) * std::abs(w.derivative(j)));
        }
    }
    return out;
}

double window_min(const GridFunction& w, double a, double b) {
    double m = std::min(w.interpolate(a), w.interpolate(b));
    const double eps = 1e-12;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double t = w.node(j);
        if (t >= a - eps && t <= b + eps) {
            m = std::min(m, w.value(j));
        }
    }
    return m;
}

ConeMembershipReport cone_check(const GridFunction& w, const ConeWindow& window,
                                std::optional<double> tolerance) {
    const Component c = window.kind == Kernel::k1 ? Component::first : Component::second;
    const Norms nm = norms(w, c);
    ConeMembershipReport rep{};
    rep.sup_norm = nm.sup;
    rep.weighted_deriv_norm = nm.weighted_derivative;
    rep.window_min = window_min(w, window.a, window.b);
    rep.harnack_c = harnack_c(window);
    rep.tolerance = tolerance.value_or(1e-10 * (1.0 + nm.sup));
    rep.is_nonneg = std::ranges::all_of(w.values(), [&](double x) { return x >= -rep.tolerance; });
    rep.harnack_ok = rep.window_min >= rep.harnack_c * rep.sup_norm - rep.tolerance;
    rep.derivative_ok = rep.weighted_deriv_norm <= rep.sup_norm + rep.tolerance;
    return rep;
}

}  // namespace annular
