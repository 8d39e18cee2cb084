#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace annular {

/// Values and t-derivatives of a scalar function on the uniform grid
/// t_j = j/N, j = 0..N. N is even and at least 4.
class GridFunction {
public:
    /// Throws std::invalid_argument on bad N, size mismatch or non-finite data.
    GridFunction(std::vector<double> values, std::vector<double> derivatives);

    /// Derivatives by centered differences, second-order one-sided at the ends.
    static GridFunction from_values(std::vector<double> values);

    static GridFunction sample(int N, const std::function<double(double)>& f,
                               const std::function<double(double)>& df);
    static GridFunction zero(int N);

    int panels() const { return static_cast<int>(values_.size()) - 1; }
    std::size_t size() const { return values_.size(); }
    double spacing() const { return 1.0 / panels(); }
    double node(std::size_t j) const { return static_cast<double>(j) / panels(); }

    std::span<const double> values() const { return values_; }
    std::span<const double> derivatives() const { return derivatives_; }
    double value(std::size_t j) const { return values_[j]; }
    double derivative(std::size_t j) const { return derivatives_[j]; }

    /// Piecewise cubic Hermite interpolation of value and derivative at t in [0,1].
    double interpolate(double t) const;
    double interpolate_derivative(double t) const;

private:
    std::vector<double> values_;
    std::vector<double> derivatives_;
};

double sup_distance(const GridFunction& a, const GridFunction& b);

}  // namespace annular
