#include "annular/numerics.hpp"

#include <stdexcept>

namespace annular {

std::vector<double> cumulative_simpson(std::span<const double> y, double h) {
    const std::size_t n = y.size();
    if (n < 3) {
        throw std::invalid_argument("cumulative_simpson needs at least three samples");
    }
    std::vector<double> F(n, 0.0);
    F[1] = h * (5.0 * y[0] + 8.0 * y[1] - y[2]) / 12.0;
    for (std::size_t j = 2; j < n; ++j) {
        if (j % 2 == 0) {
            F[j] = F[j - 2] + h * (y[j - 2] + 4.0 * y[j - 1] + y[j]) / 3.0;
        } else {
            F[j] = F[j - 1] + h * (-y[j - 2] + 8.0 * y[j - 1] + 5.0 * y[j]) / 12.0;
        }
    }
    return F;
}

}  // namespace annular
