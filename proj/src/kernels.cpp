#include "annular/kernels.hpp"

#include "annular/numerics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace annular {

namespace {

void require_unit(double t, double s) {
    if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw std::domain_error("kernel arguments outside [0,1]: t=" + std::to_string(t) +
                                " s=" + std::to_string(s));
    }
}

}  // namespace

ConeWindow::ConeWindow(double a_, double b_, Kernel kind_) : a(a_), b(b_), kind(kind_) {
    if (a == b) {
        throw std::domain_error("degenerate window [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]");
    }
    const bool ok = kind == Kernel::k1 ? (0.0 < a && a < b && b < 1.0)
                                       : (0.0 < a && a < b && b <= 1.0);
    if (!ok) {
        throw std::domain_error(kind == Kernel::k1 ? "window for k1 must satisfy 0 < a < b < 1"
                                                   : "window for k2 must satisfy 0 < a < b <= 1");
    }
}

double k1(double t, double s) {
    require_unit(t, s);
    return s <= t ? s * (1.0 - t) : t * (1.0 - s);
}

double k2(double t, double s) {
    require_unit(t, s);
    return std::min(t, s);
}

double kernel(Kernel kind, double t, double s) {
    return kind == Kernel::k1 ? k1(t, s) : k2(t, s);
}

double phi(Kernel kind, double s) {
    return kind == Kernel::k1 ? s * (1.0 - s) : s;
}

double psi(Kernel kind, double s) {
    return kind == Kernel::k1 ? std::max(s, 1.0 - s) : 1.0;
}

KernelSlope dk_dt(Kernel kind, double t, double s) {
    require_unit(t, s);
    const bool left = s <= t;  // s < t branch, also used at the jump
    double value = 0.0;
    if (kind == Kernel::k1) {
        value = left ? -s : 1.0 - s;
    } else {
        value = left ? 0.0 : 1.0;
    }
    return {value, s == t};
}

double little_m(Kernel kind) {
    return kind == Kernel::k1 ? 8.0 : 2.0;
}

namespace {

double kernel_integral(Kernel kind, double t, double lo, double hi) {
    constexpr int panels = 8;  // integrand is linear on each side of t
    return simpson_split([&](double s) { return kernel(kind, t, s); }, lo, hi,
                         std::clamp(t, lo, hi), panels);
}

// Extremum of h over [lo,hi]: grid scan, then golden-section refinement
// around the best grid point. Endpoints are always candidates.
template <class H>
double scan_and_refine(H&& h, double lo, double hi, int grid_points, bool maximize) {
    grid_points = std::max(grid_points, 3);
    const double step = (hi - lo) / (grid_points - 1);
    const double sign = maximize ? -1.0 : 1.0;
    int best_j = 0;
    double best = sign * h(lo);
    for (int j = 1; j < grid_points; ++j) {
        const double x = j + 1 == grid_points ? hi : lo + j * step;
        const double val = sign * h(x);
        if (val < best) {
            best = val;
            best_j = j;
        }
    }
    const double left = std::max(lo, lo + (best_j - 1) * step);
    const double right = std::min(hi, lo + (best_j + 1) * step);
    const double x = golden_section_argmin([&](double y) { return sign * h(y); }, left, right);
    best = std::min(best, sign * h(x));
    return sign * best;
}

}  // namespace

double little_m_numeric(Kernel kind, int grid_points) {
    const double sup = scan_and_refine([&](double t) { return kernel_integral(kind, t, 0.0, 1.0); },
                                       0.0, 1.0, grid_points, true);
    return 1.0 / sup;
}

double big_M(const ConeWindow& w) {
    const double a = w.a;
    const double b = w.b;
    if (w.kind == Kernel::k2) {
        return 1.0 / (a * (b - a));
    }
    if (a + b <= 1.0) {
        return 2.0 / (a * (b - a) * (2.0 - a - b));
    }
    return 2.0 / ((1.0 - b) * (b * b - a * a));
}

double big_M_numeric(const ConeWindow& w, int grid_points) {
    const double inf = scan_and_refine(
        [&](double t) { return kernel_integral(w.kind, t, w.a, w.b); }, w.a, w.b, grid_points,
        false);
    return 1.0 / inf;
}

double harnack_c(const ConeWindow& w) {
    return w.kind == Kernel::k1 ? std::min(w.a, 1.0 - w.b) : w.a;
}

KernelConstants kernel_constants(const ConeWindow& w1, const ConeWindow& w2) {
    if (w1.kind != Kernel::k1 || w2.kind != Kernel::k2) {
        throw std::invalid_argument("kernel_constants expects (k1 window, k2 window)");
    }
    return {little_m(Kernel::k1), little_m(Kernel::k2), big_M(w1), big_M(w2), harnack_c(w1),
            harnack_c(w2)};
}

}  // namespace annular
