#include "annular/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace annular {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

// Iterate state: values and derivatives of u and v, stacked.
struct State {
    Eigen::VectorXd values;       // [u; v]
    Eigen::VectorXd derivatives;  // [u'; v']
};

State pack(const GridFunction& u, const GridFunction& v) {
    const Eigen::Index n = static_cast<Eigen::Index>(u.size());
    State s{Eigen::VectorXd(2 * n), Eigen::VectorXd(2 * n)};
    for (Eigen::Index j = 0; j < n; ++j) {
        s.values[j] = u.value(j);
        s.values[n + j] = v.value(j);
        s.derivatives[j] = u.derivative(j);
        s.derivatives[n + j] = v.derivative(j);
    }
    return s;
}

std::pair<GridFunction, GridFunction> unpack(const State& s) {
    const Eigen::Index n = s.values.size() / 2;
    auto slice = [](const Eigen::VectorXd& x, Eigen::Index from, Eigen::Index len) {
        return std::vector<double>(x.data() + from, x.data() + from + len);
    };
    return {GridFunction(slice(s.values, 0, n), slice(s.derivatives, 0, n)),
            GridFunction(slice(s.values, n, n), slice(s.derivatives, n, n))};
}

double sup_of(const GridFunction& w) {
    double m = 0.0;
    for (double x : w.values()) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void SolveConfig::validate() const {
    if (N < 64 || N % 2 != 0) {
        throw std::invalid_argument("grid N must be even and >= 64");
    }
    if (!(damping > 0.0 && damping <= 1.0)) {
        throw std::invalid_argument("damping must lie in (0,1]");
    }
    if (depth < 0) {
        throw std::invalid_argument("acceleration depth must be >= 0");
    }
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be >= 1");
    }
    if (!(tolerance > 0.0)) {
        throw std::invalid_argument("tolerance must be > 0");
    }
    if (initial == InitialGuess::user) {
        if (!user_guess) {
            throw std::invalid_argument("user initial guess requested but none given");
        }
        if (user_guess->first.panels() != N || user_guess->second.panels() != N) {
            throw std::invalid_argument("user initial guess lives on a different grid");
        }
    }
}

const char* to_string(Region r) {
    switch (r) {
        case Region::target: return "inside target annular region";
        case Region::inside_K: return "inside K_{rho1,rho2}";
        case Region::outside_V: return "outside V_{s1,s2}";
        case Region::mixed: return "mixed";
    }
    return "?";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iterations: return "max_iterations";
        case SolveStatus::diverged: return "diverged";
        case SolveStatus::failed: return "failed";
    }
    return "?";
}

Localization localize(const GridFunction& u, const GridFunction& v, const WindowPair& w,
                      const ThresholdSpec& spec) {
    Localization loc{};
    loc.norm_u = norms(u, Component::first).full();
    loc.norm_v = norms(v, Component::second).full();
    loc.window_min_u = window_min(u, w.first.a, w.first.b);
    loc.window_min_v = window_min(v, w.second.a, w.second.b);
    loc.cone_member = cone_check(u, w.first).member() && cone_check(v, w.second).member();
    loc.in_K_closure = loc.norm_u <= spec.rho1 && loc.norm_v <= spec.rho2;
    loc.in_V = loc.window_min_u < spec.s1 && loc.window_min_v < spec.s2;
    if (!loc.cone_member) {
        loc.region = Region::mixed;
    } else if (loc.in_K_closure) {
        loc.region = Region::inside_K;
    } else if (loc.in_V) {
        loc.region = Region::target;
    } else {
        loc.region = Region::outside_V;
    }
    return loc;
}

std::pair<double, double> ode_residual(const ReducedSystem& sys, const GridFunction& u,
                                       const GridFunction& v) {
    const double h = u.spacing();
    double ru = 0.0;
    double rv = 0.0;
    for (std::size_t j = 1; j + 1 < u.size(); ++j) {
        const double t = u.node(j);
        const double w1 = std::max(u.value(j), 0.0);
        const double w2 = std::max(v.value(j), 0.0);
        const double z1 = std::abs(u.derivative(j));
        const double z2 = std::abs(v.derivative(j));
        const double uxx = (u.value(j + 1) - 2.0 * u.value(j) + u.value(j - 1)) / (h * h);
        const double vxx = (v.value(j + 1) - 2.0 * v.value(j) + v.value(j - 1)) / (h * h);
        ru = std::max(ru, std::abs(-uxx - sys.g(Component::first, t, w1, w2, z1, z2)));
        rv = std::max(rv, std::abs(-vxx - sys.g(Component::second, t, w1, w2, z1, z2)));
    }
    return {ru, rv};
}

RadialResidual verify_radial(const ReducedSystem& sys, const GridFunction& u,
                             const GridFunction& v, int samples) {
    const AnnulusDomain& d = sys.domain();
    samples = std::max(samples, 1);
    const double delta = (d.R1 - d.R0) / u.panels();
    auto at = [&](const GridFunction& w, double r) {
        return w.interpolate(inverse_radial_map(d, r));
    };
    RadialResidual out{};
    out.samples = samples;
    for (int k = 0; k < samples; ++k) {
        const double r = d.R0 + delta + (d.R1 - d.R0 - 2.0 * delta) * (k + 0.5) / samples;
        const double um = at(u, r - delta), u0 = at(u, r), up = at(u, r + delta);
        const double vm = at(v, r - delta), v0 = at(v, r), vp = at(v, r + delta);
        const double ur = (up - um) / (2.0 * delta);
        const double vr = (vp - vm) / (2.0 * delta);
        const double urr = (up - 2.0 * u0 + um) / (delta * delta);
        const double vrr = (vp - 2.0 * v0 + vm) / (delta * delta);
        const EvalPoint pt{r, std::max(u0, 0.0), std::max(v0, 0.0), std::abs(ur), std::abs(vr)};
        const double lap_u = urr + (d.n - 1) / r * ur;
        const double lap_v = vrr + (d.n - 1) / r * vr;
        out.residual_u = std::max(out.residual_u,
                                  std::abs(-lap_u - sys.f(Component::first).eval(pt)));
        out.residual_v = std::max(out.residual_v,
                                  std::abs(-lap_v - sys.f(Component::second).eval(pt)));
    }
    const std::size_t N = u.size() - 1;
    out.u_at_R0 = u.value(0);
    out.u_at_R1 = u.value(N);
    out.v_at_R0 = v.value(0);
    out.dv_dr_at_R1 = v.derivative(N) / radial_map_derivative(d, 1.0);
    const double h = u.spacing();
    out.boundary_tolerance =
        std::max(1e-10, h * h) * (1.0 + std::max(sup_of(u), sup_of(v)));
    out.boundary_ok = std::abs(out.u_at_R0) <= out.boundary_tolerance &&
                      std::abs(out.u_at_R1) <= out.boundary_tolerance &&
                      std::abs(out.v_at_R0) <= out.boundary_tolerance &&
                      std::abs(out.dv_dr_at_R1) <= out.boundary_tolerance;
    return out;
}

std::pair<GridFunction, GridFunction> kernel_shaped_guess(int N, const WindowPair& w,
                                                          const ThresholdSpec& spec) {
    const double a1 = w.first.a, b1 = w.first.b, a2 = w.second.a;
    const double l1 = std::sqrt(spec.rho1 * spec.s1) / std::min(a1 * (1 - a1), b1 * (1 - b1));
    const double l2 = std::sqrt(spec.rho2 * spec.s2) / (a2 * (2 - a2));
    return {GridFunction::sample(
                N, [&](double t) { return l1 * t * (1 - t); },
                [&](double t) { return l1 * (1 - 2 * t); }),
            GridFunction::sample(
                N, [&](double t) { return l2 * t * (2 - t); },
                [&](double t) { return l2 * (2 - 2 * t); })};
}

SolveResult solve(const ReducedSystem& sys, const WindowPair& windows, const ThresholdSpec& spec,
                  const SolveConfig& cfg) {
    cfg.validate();
    std::pair<GridFunction, GridFunction> x0 = [&] {
        switch (cfg.initial) {
            case InitialGuess::flat:
                return std::pair{
                    GridFunction(std::vector<double>(cfg.N + 1, cfg.flat_level),
                                 std::vector<double>(cfg.N + 1, 0.0)),
                    GridFunction(std::vector<double>(cfg.N + 1, cfg.flat_level),
                                 std::vector<double>(cfg.N + 1, 0.0))};
            case InitialGuess::user:
                return *cfg.user_guess;
            case InitialGuess::kernel_shaped:
                break;
        }
        return kernel_shaped_guess(cfg.N, windows, spec);
    }();

    State x = pack(x0.first, x0.second);
    SolveStatus status = SolveStatus::max_iterations;
    std::string message;
    std::vector<TraceEntry> trace;
    double residual = INFINITY;
    int iterations = 0;
    double reference = 0.0;

    // Anderson history of state and residual differences.
    std::deque<State> dx_hist;
    std::deque<State> df_hist;
    std::optional<State> prev_x;
    std::optional<State> prev_f;

    try {
        for (;;) {
            auto [u, v] = unpack(x);
            auto [tu, tv] = apply_T(sys, u, v);
            const State tx = pack(tu, tv);
            const State f{tx.values - x.values, tx.derivatives - x.derivatives};
            residual = f.values.lpNorm<Eigen::Infinity>();
            trace.push_back({iterations, residual, sup_of(u), sup_of(v)});
            if (iterations == 0) {
                reference = std::max({sup_of(u), sup_of(v), sup_of(tu), sup_of(tv)});
            }
            if (residual <= cfg.tolerance) {
                status = SolveStatus::converged;
                break;
            }
            if (iterations >= cfg.max_iterations) {
                status = SolveStatus::max_iterations;
                message = "iteration budget exhausted";
                break;
            }
            const double size = x.values.lpNorm<Eigen::Infinity>();
            if (!std::isfinite(residual) || size > 1e6 * std::max(reference, 1e-300)) {
                status = SolveStatus::diverged;
                message = "iterate norm exceeded 1e6 times its initial size";
                break;
            }

            State next;
            if (iterations == 0) {
                next = tx;
            } else if (cfg.depth == 0 || !prev_x) {
                next = {x.values + cfg.damping * f.values,
                        x.derivatives + cfg.damping * f.derivatives};
            } else {
                dx_hist.push_back({x.values - prev_x->values, x.derivatives - prev_x->derivatives});
                df_hist.push_back(
                    {f.values - prev_f->values, f.derivatives - prev_f->derivatives});
                if (static_cast<int>(dx_hist.size()) > cfg.depth) {
                    dx_hist.pop_front();
                    df_hist.pop_front();
                }
                const Eigen::Index m = static_cast<Eigen::Index>(df_hist.size());
                Eigen::MatrixXd DF(f.values.size(), m);
                for (Eigen::Index k = 0; k < m; ++k) DF.col(k) = df_hist[k].values;
                const Eigen::VectorXd gamma = DF.colPivHouseholderQr().solve(f.values);
                next = {x.values + cfg.damping * f.values,
                        x.derivatives + cfg.damping * f.derivatives};
                for (Eigen::Index k = 0; k < m; ++k) {
                    next.values -= gamma[k] * (dx_hist[k].values + cfg.damping * df_hist[k].values);
                    next.derivatives -=
                        gamma[k] * (dx_hist[k].derivatives + cfg.damping * df_hist[k].derivatives);
                }
                next.values = next.values.cwiseMax(0.0);
            }
            if (iterations > 0) {
                prev_x = x;
                prev_f = f;
            }
            x = std::move(next);
            ++iterations;
        }
    } catch (const OperatorError& e) {
        status = SolveStatus::failed;
        message = e.what();
    } catch (const std::invalid_argument& e) {
        status = SolveStatus::failed;
        message = e.what();
    }

    auto [u, v] = unpack(x);
    SolveResult result{u,          v,       status, status == SolveStatus::converged, message,
                       iterations, residual, 0.0,   0.0,
                       {},         {},      std::move(trace)};
    try {
        std::tie(result.ode_residual_u, result.ode_residual_v) = ode_residual(sys, u, v);
        result.pde = verify_radial(sys, u, v);
    } catch (const std::exception& e) {
        result.ode_residual_u = result.ode_residual_v = INFINITY;
        result.pde.residual_u = result.pde.residual_v = INFINITY;
        if (result.message.empty()) result.message = e.what();
    }
    result.localization = localize(u, v, windows, spec);
    if (result.converged) {
        result.message = "candidate solution: fixed-point residual " + fmt(residual) +
                         " after " + std::to_string(iterations) + " iterations";
    }
    return result;
}

void write_solution_csv(std::ostream& out, const ReducedSystem& sys, const SolveResult& res) {
    out << "# N=" << res.u.panels() << '\n';
    out << "# converged=" << (res.converged ? 1 : 0) << '\n';
    out << "# status=" << to_string(res.status) << '\n';
    out << "# iterations=" << res.iterations << '\n';
    out << "# fixed_point_residual=" << fmt(res.fixed_point_residual) << '\n';
    out << "# ode_residual_u=" << fmt(res.ode_residual_u) << '\n';
    out << "# ode_residual_v=" << fmt(res.ode_residual_v) << '\n';
    out << "# pde_residual_u=" << fmt(res.pde.residual_u) << '\n';
    out << "# pde_residual_v=" << fmt(res.pde.residual_v) << '\n';
    out << "# localization=" << to_string(res.localization.region) << '\n';
    out << "t,r(t),u,v,u',v'\n";
    for (std::size_t j = 0; j < res.u.size(); ++j) {
        const double t = res.u.node(j);
        out << fmt(t) << ',' << fmt(radial_map(sys.domain(), t)) << ',' << fmt(res.u.value(j))
            << ',' << fmt(res.v.value(j)) << ',' << fmt(res.u.derivative(j)) << ','
            << fmt(res.v.derivative(j)) << '\n';
    }
}

std::pair<GridFunction, GridFunction> read_solution_csv(std::istream& in) {
    std::vector<double> u, v, du, dv;
    std::string line;
    bool header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("t,r(t),u,v,u',v'", 0) != 0) {
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": expected header t,r(t),u,v,u',v'");
            }
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cols;
        while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
        if (cols.size() != 6) {
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected 6 columns");
        }
        u.push_back(cols[2]);
        v.push_back(cols[3]);
        du.push_back(cols[4]);
        dv.push_back(cols[5]);
    }
    return {GridFunction(std::move(u), std::move(du)), GridFunction(std::move(v), std::move(dv))};
}

}  // namespace annular
