#pragma once

#include "annular/grid.hpp"
#include "annular/hammerstein.hpp"
#include "annular/hypothesis.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace annular {

enum class InitialGuess { flat, kernel_shaped, user };

struct SolveConfig {
    int N = 512;
    /// x <- (1 - damping) x + damping T(x)
    double damping = 0.5;
    /// Anderson history length; 0 is plain damped Picard.
    int depth = 0;
    int max_iterations = 500;
    /// Stop once the sup-norm of x - T(x) is at most this.
    double tolerance = 1e-10;
    InitialGuess initial = InitialGuess::kernel_shaped;
    double flat_level = 1.0;
    std::optional<std::pair<GridFunction, GridFunction>> user_guess;

    /// Throws std::invalid_argument.
    void validate() const;
};

enum class Region { target, inside_K, outside_V, mixed };

const char* to_string(Region r);

struct Localization {
    Region region;
    double norm_u;  // max(sup, weighted derivative)
    double norm_v;
    double window_min_u;
    double window_min_v;
    bool cone_member;
    bool in_K_closure;
    bool in_V;
};

/// Classifies (u,v) against K_{rho1,rho2} (both norms below rho_i) and
/// V_{s1,s2} (both window minima below s_i). Pairs outside the cone are `mixed`.
Localization localize(const GridFunction& u, const GridFunction& v, const WindowPair& windows,
                      const ThresholdSpec& spec);

struct RadialResidual {
    double residual_u;
    double residual_v;
    double u_at_R0;
    double u_at_R1;
    double v_at_R0;
    double dv_dr_at_R1;
    double boundary_tolerance;
    bool boundary_ok;
    int samples;

    double max() const { return residual_u > residual_v ? residual_u : residual_v; }
};

/// max over interior nodes of |-w'' - g_i| with w'' from second differences.
std::pair<double, double> ode_residual(const ReducedSystem& sys, const GridFunction& u,
                                       const GridFunction& v);

/// Residual of -w'' - (n-1)/r w' - f in r-coordinates at `samples` interior radii,
/// from the Hermite interpolant pulled back through t(r), plus boundary checks.
RadialResidual verify_radial(const ReducedSystem& sys, const GridFunction& u,
                             const GridFunction& v, int samples = 200);

enum class SolveStatus { converged, max_iterations, diverged, failed };

const char* to_string(SolveStatus s);

struct TraceEntry {
    int iteration;
    double residual;
    double sup_u;
    double sup_v;
};

struct SolveResult {
    GridFunction u;
    GridFunction v;
    SolveStatus status;
    bool converged;
    std::string message;
    int iterations;
    double fixed_point_residual;
    double ode_residual_u;
    double ode_residual_v;
    RadialResidual pde;
    Localization localization;
    std::vector<TraceEntry> trace;
};

/// Best-effort fixed point of T by damped Picard iteration with optional
/// Anderson mixing. The first step is an undamped T(x0). A converged result is a
/// candidate solution only; residuals and localization are always filled in.
SolveResult solve(const ReducedSystem& sys, const WindowPair& windows, const ThresholdSpec& spec,
                  const SolveConfig& config);

/// Kernel-shaped start: u0 = l1 t(1-t), v0 = l2 t(2-t) with window minima at sqrt(rho_i s_i).
std::pair<GridFunction, GridFunction> kernel_shaped_guess(int N, const WindowPair& windows,
                                                          const ThresholdSpec& spec);

/// CSV export: metadata lines starting with '#', then the header
/// `t,r(t),u,v,u',v'` and one row per node.
void write_solution_csv(std::ostream& out, const ReducedSystem& sys, const SolveResult& result);

/// Reads the u, v, u', v' columns of a CSV written by write_solution_csv.
std::pair<GridFunction, GridFunction> read_solution_csv(std::istream& in);

}  // namespace annular
