#include "annular/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace annular {

namespace {

void require_unit(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("t = " + std::to_string(t) + " outside [0,1]");
    }
}

// R1^k - (R1^k - R0^k) t, with k = n - 2.
double denominator(const AnnulusDomain& d, double t) {
    const double k = d.n - 2;
    const double hi = std::pow(d.R1, k);
    const double lo = std::pow(d.R0, k);
    return (1.0 - t) * hi + t * lo;
}

}  // namespace

AnnulusDomain::AnnulusDomain(int n_, double R0_, double R1_) : n(n_), R0(R0_), R1(R1_) {
    if (n < 2) {
        throw std::domain_error("dimension n must be >= 2, got " + std::to_string(n));
    }
    if (!(R0 > 0.0) || !(R1 > R0) || !std::isfinite(R1)) {
        throw std::domain_error("radii must satisfy 0 < R0 < R1 < inf");
    }
}

std::optional<TransformConstants> transform_constants(const AnnulusDomain& d) {
    if (d.n == 2) {
        return std::nullopt;
    }
    const double k = d.n - 2;
    const double hi = std::pow(d.R1, k);
    const double lo = std::pow(d.R0, k);
    return TransformConstants{std::pow(d.R0 * d.R1, k) / (hi - lo), hi / (hi - lo)};
}

double radial_map(const AnnulusDomain& d, double t) {
    require_unit(t);
    double r = 0.0;
    if (d.n == 2) {
        r = std::pow(d.R0, 1.0 - t) * std::pow(d.R1, t);
    } else {
        // (A/(B-t))^(1/k) = R0 R1 / D(t)^(1/k)
        r = d.R0 * d.R1 / std::pow(denominator(d, t), 1.0 / (d.n - 2));
    }
    // rounding can push r a few ulps past the radii
    return std::clamp(r, d.R0, d.R1);
}

double radial_map_derivative(const AnnulusDomain& d, double t) {
    const double r = radial_map(d, t);
    if (d.n == 2) {
        return r * std::log(d.R1 / d.R0);
    }
    const double k = d.n - 2;
    const double spread = std::pow(d.R1, k) - std::pow(d.R0, k);
    return r * spread / (k * denominator(d, t));
}

double inverse_radial_map(const AnnulusDomain& d, double r) {
    // rounding slack so that inverse_radial_map(radial_map(t)) never throws
    constexpr double slack = 1e-12;
    if (!(r >= d.R0 * (1 - slack) && r <= d.R1 * (1 + slack))) {
        throw std::domain_error("r = " + std::to_string(r) + " outside [R0,R1]");
    }
    r = std::clamp(r, d.R0, d.R1);
    if (d.n == 2) {
        return std::log(r / d.R0) / std::log(d.R1 / d.R0);
    }
    const double k = d.n - 2;
    const double hi = std::pow(d.R1, k);
    const double lo = std::pow(d.R0, k);
    // D(t) = (R0 R1 / r)^k
    const double t = (hi - std::pow(d.R0 * d.R1 / r, k)) / (hi - lo);
    return std::clamp(t, 0.0, 1.0);
}

double weight_p(const AnnulusDomain& d, double t) {
    require_unit(t);
    if (d.n == 2) {
        const double r = radial_map(d, t);
        const double L = std::log(d.R1 / d.R0);
        return r * r * L * L;
    }
    const double k = d.n - 2;
    const double spread = std::pow(d.R1, k) - std::pow(d.R0, k);
    const double scale = d.R0 * d.R1 * spread / k;
    return scale * scale / std::pow(denominator(d, t), 2.0 * (d.n - 1) / k);
}

double extremize_p(const AnnulusDomain& d, double alpha, double beta, Extremum mode) {
    if (!(alpha <= beta)) {
        throw std::domain_error("empty interval for extremize_p");
    }
    require_unit(alpha);
    require_unit(beta);
    const double pa = weight_p(d, alpha);
    const double pb = weight_p(d, beta);
    return mode == Extremum::sup ? std::max(pa, pb) : std::min(pa, pb);
}

double extremize_p_sampled(const AnnulusDomain& d, double alpha, double beta, Extremum mode,
                           int samples) {
    if (!(alpha <= beta)) {
        throw std::domain_error("empty interval for extremize_p");
    }
    samples = std::max(samples, 2);
    double best = weight_p(d, alpha);
    for (int j = 1; j < samples; ++j) {
        const double t = j + 1 == samples ? beta : alpha + (beta - alpha) * j / (samples - 1);
        const double p = weight_p(d, t);
        best = mode == Extremum::sup ? std::max(best, p) : std::min(best, p);
    }
    return best;
}

}  // namespace annular
