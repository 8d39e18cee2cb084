#pragma once

namespace annular {

/// Green's kernel selector: k1 is Dirichlet-Dirichlet (u), k2 is Dirichlet-Neumann (v).
enum class Kernel { k1 = 1, k2 = 2 };

/// Localization window [a,b] for one component. For k1 it must satisfy
/// 0 < a < b < 1, for k2 0 < a < b <= 1.
struct ConeWindow {
    double a;
    double b;
    Kernel kind;

    /// Throws std::domain_error ("degenerate window" when a == b).
    ConeWindow(double a, double b, Kernel kind);

    bool operator==(const ConeWindow&) const = default;
};

double k1(double t, double s);
double k2(double t, double s);
double kernel(Kernel kind, double t, double s);

/// Envelopes: k(t,s) <= phi(s), |dk/dt(t,s)| <= psi(s).
double phi(Kernel kind, double s);
double psi(Kernel kind, double s);

struct KernelSlope {
    double value;
    /// Set when t == s, where dk/dt jumps; value is then the s < t branch.
    bool at_jump;
};

KernelSlope dk_dt(Kernel kind, double t, double s);

/// (sup_t int_0^1 k(t,s) ds)^-1: 8 for k1, 2 for k2.
double little_m(Kernel kind);

/// Same constant from quadrature of the kernel on a `grid_points` t-grid,
/// followed by golden-section refinement around the best grid point.
double little_m_numeric(Kernel kind, int grid_points = 2001);

/// (inf_{t in [a,b]} int_a^b k(t,s) ds)^-1 in closed form.
double big_M(const ConeWindow& window);

/// Numerical counterpart of big_M: minimizes the window integral over t in [a,b].
double big_M_numeric(const ConeWindow& window, int grid_points = 2001);

/// Harnack constant: min(a, 1-b) for k1, a for k2.
double harnack_c(const ConeWindow& window);

struct KernelConstants {
    double m1, m2;
    double M1, M2;
    double c1, c2;
};

KernelConstants kernel_constants(const ConeWindow& w1, const ConeWindow& w2);

}  // namespace annular
