#pragma once

#include <optional>

namespace annular {

/// Annulus {x in R^n : R0 < |x| < R1}.
struct AnnulusDomain {
    int n;
    double R0;
    double R1;

    /// Throws std::domain_error unless n >= 2 and 0 < R0 < R1 < inf.
    AnnulusDomain(int n, double R0, double R1);

    bool operator==(const AnnulusDomain&) const = default;
};

/// Constants of the n >= 3 change of variables r(t) = (A/(B - t))^(1/(n-2)).
struct TransformConstants {
    double A;
    double B;
};

/// Empty for n = 2.
std::optional<TransformConstants> transform_constants(const AnnulusDomain& domain);

// The change of variables t in [0,1] -> r in [R0,R1] turns
//   -w''(r) - (n-1)/r w'(r) = f
// into -w''(t) = p(t) f. Orientation is r(0) = R0, r(1) = R1 for every n;
// for n = 2 this is r(t) = R0^(1-t) R1^t.
// All functions throw std::domain_error for t outside [0,1].

double radial_map(const AnnulusDomain& domain, double t);
double radial_map_derivative(const AnnulusDomain& domain, double t);

/// Inverse of radial_map; r must lie in [R0,R1].
double inverse_radial_map(const AnnulusDomain& domain, double r);

/// Closed-form weight p(t). Equals r'(t)^2.
double weight_p(const AnnulusDomain& domain, double t);

enum class Extremum { sup, inf };

/// Extremum of p over [alpha, beta]. p is increasing in t for every n, so the
/// value is taken at an endpoint.
double extremize_p(const AnnulusDomain& domain, double alpha, double beta, Extremum mode);

/// Same extremum by dense sampling (`samples` equispaced points, endpoints included).
double extremize_p_sampled(const AnnulusDomain& domain, double alpha, double beta, Extremum mode,
                           int samples = 4097);

}  // namespace annular
