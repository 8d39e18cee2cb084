#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace annular {

/// Composite Simpson rule on [a,b]; `panels` is rounded up to the next even number.
template <class F>
double simpson(F&& f, double a, double b, int panels) {
    if (b <= a) {
        return 0.0;
    }
    panels += panels % 2;
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int j = 1; j < panels; ++j) {
        sum += (j % 2 ? 4.0 : 2.0) * f(a + j * h);
    }
    return sum * h / 3.0;
}

/// Simpson on [a,split] and [split,b] separately, so a kink at `split` does not
/// degrade the order. `panels` is the panel count on each side.
template <class F>
double simpson_split(F&& f, double a, double b, double split, int panels) {
    if (split <= a || split >= b) {
        return simpson(f, a, b, 2 * panels);
    }
    return simpson(f, a, split, panels) + simpson(f, split, b, panels);
}

/// Running integrals F_j = int_{x_0}^{x_j} y on a uniform grid of spacing h.
/// Even j use composite Simpson; odd j add the one-panel quadratic rule to F_{j-1}.
/// Needs at least three samples.
std::vector<double> cumulative_simpson(std::span<const double> y, double h);

/// Golden-section minimization of a 1-D function on [lo,hi]; returns the argmin.
template <class F>
double golden_section_argmin(F&& f, double lo, double hi, int iterations = 100) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iterations && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace annular
