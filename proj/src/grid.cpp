#include "annular/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace annular {

GridFunction::GridFunction(std::vector<double> values, std::vector<double> derivatives)
    : values_(std::move(values)), derivatives_(std::move(derivatives)) {
    const std::size_t n = values_.size();
    if (n < 5 || (n - 1) % 2 != 0) {
        throw std::invalid_argument("grid needs an even panel count N >= 4, got " +
                                    std::to_string(static_cast<long>(n) - 1));
    }
    if (derivatives_.size() != n) {
        throw std::invalid_argument("value and derivative arrays differ in length");
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(values_[j]) || !std::isfinite(derivatives_[j])) {
            throw std::invalid_argument("non-finite grid data at node " + std::to_string(j));
        }
    }
}

GridFunction GridFunction::from_values(std::vector<double> values) {
    const std::size_t n = values.size();
    if (n < 5) {
        throw std::invalid_argument("grid needs at least five nodes");
    }
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> d(n);
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        d[j] = (values[j + 1] - values[j - 1]) / (2.0 * h);
    }
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
    return GridFunction(std::move(values), std::move(d));
}

GridFunction GridFunction::sample(int N, const std::function<double(double)>& f,
                                  const std::function<double(double)>& df) {
    if (N < 4) {
        throw std::invalid_argument("grid needs N >= 4");
    }
    std::vector<double> v(N + 1);
    std::vector<double> d(N + 1);
    for (int j = 0; j <= N; ++j) {
        const double t = static_cast<double>(j) / N;
        v[j] = f(t);
        d[j] = df(t);
    }
    return GridFunction(std::move(v), std::move(d));
}

GridFunction GridFunction::zero(int N) {
    return GridFunction(std::vector<double>(N + 1, 0.0), std::vector<double>(N + 1, 0.0));
}

namespace {

struct Cell {
    std::size_t j;
    double x;  // local coordinate in [0,1]
};

Cell locate(double t, int N) {
    t = std::clamp(t, 0.0, 1.0);
    const double scaled = t * N;
    const auto j = std::min(static_cast<std::size_t>(scaled), static_cast<std::size_t>(N - 1));
    return {j, scaled - static_cast<double>(j)};
}

}  // namespace

double GridFunction::interpolate(double t) const {
    const auto [j, x] = locate(t, panels());
    const double h = spacing();
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    return h00 * values_[j] + h10 * h * derivatives_[j] + h01 * values_[j + 1] +
           h11 * h * derivatives_[j + 1];
}

double GridFunction::interpolate_derivative(double t) const {
    const auto [j, x] = locate(t, panels());
    const double h = spacing();
    const double d00 = 6 * x * x - 6 * x;
    const double d10 = 3 * x * x - 4 * x + 1;
    const double d01 = -d00;
    const double d11 = 3 * x * x - 2 * x;
    return (d00 * values_[j] + d01 * values_[j + 1]) / h + d10 * derivatives_[j] +
           d11 * derivatives_[j + 1];
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("grid functions live on different grids");
    }
    double d = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        d = std::max(d, std::abs(a.value(j) - b.value(j)));
    }
    return d;
}

}  // namespace annular
