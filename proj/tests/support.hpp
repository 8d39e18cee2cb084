#pragma once

#include "annular/grid.hpp"
#include "annular/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace annular::fixtures {

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

// Positive nonlinearity built from random positive terms; every term is
// well defined for r > 0 and nonnegative states and gradients.
inline std::string random_positive_f(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(0.05, 2.0);
    std::uniform_int_distribution<int> pick(0, 7);
    std::uniform_int_distribution<int> power(1, 5);
    std::string f = num(coef(rng));
    const int terms = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
        const std::string c = num(coef(rng));
        switch (pick(rng)) {
            case 0: f += " + " + c + "*u^" + std::to_string(power(rng)); break;
            case 1: f += " + " + c + "*v^" + std::to_string(power(rng)); break;
            case 2: f += " + " + c + "*exp(-r^2)*(2 - sin(gu^2 + gv^2))"; break;
            case 3: f += " + " + c + "*atan(1 + gu + gv)*u*v"; break;
            case 4: f += " + " + c + "*sqrt(1 + u + r)"; break;
            case 5: f += " + " + c + "/(1 + gu^2)"; break;
            case 6: f += " + " + c + "*max(u, v)*cos(r)^2"; break;
            default: f += " + " + c + "*log(1 + v + gv)"; break;
        }
    }
    return f;
}

inline ConeWindow random_window(std::mt19937_64& rng, Kernel kind) {
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    for (;;) {
        double a = unit(rng);
        double b = kind == Kernel::k2 && rng() % 4 == 0 ? 1.0 : unit(rng);
        if (a > b) std::swap(a, b);
        if (b - a > 0.02) return ConeWindow(a, b, kind);
    }
}

// Random nonnegative input for apply_T, not necessarily in the cone.
inline GridFunction random_nonneg(std::mt19937_64& rng, int N, bool dirichlet_right) {
    std::uniform_real_distribution<double> amp(0.0, 3.0);
    std::uniform_real_distribution<double> freq(0.5, 4.0);
    const double a = amp(rng), b = amp(rng), w = freq(rng);
    if (dirichlet_right) {
        return GridFunction::sample(
            N, [=](double t) { return a * t * (1 - t) + b * std::pow(std::sin(w * t), 2); },
            [=](double t) { return a * (1 - 2 * t) + b * w * std::sin(2 * w * t); });
    }
    return GridFunction::sample(
        N, [=](double t) { return a * t * (2 - t) + b * std::pow(std::sin(w * t), 2); },
        [=](double t) { return a * (2 - 2 * t) + b * w * std::sin(2 * w * t); });
}

}  // namespace annular::fixtures
