#include "pda/hje_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace pda {

HjeSolution solve_hje(GridField f)
{
    const std::size_t k = f.resolution();
    for (double v : f.values()) {
        if (!(v > 0.0)) {
            throw std::domain_error("solve_hje: right-hand side must be strictly positive (precondition the density)");
        }
    }

    const double h = f.spacing();
    const double h2 = h * h;
    GridField u(k, 0.0);
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = 1; j <= k; ++j) {
            const double a = u(i - 1, j);
            const double b = u(i, j - 1);
            const double half_gap = 0.5 * std::abs(a - b);
            const double rhs = h2 * f(i, j);
            // Larger root written as max(a, b) + q with q(q + |a - b|) = h^2 f,
            // which avoids cancellation when a and b differ a lot.
            const double root = std::sqrt(half_gap * half_gap + rhs);
            u(i, j) = std::max(a, b) + rhs / (root + half_gap);
        }
    }
    if (!std::isfinite(u.max_value())) {
        throw std::domain_error("solve_hje: non-finite solution");
    }
    return {std::move(u), std::move(f)};
}

double depth_estimate(const HjeSolution& solution, Point2 x, double n)
{
    return std::sqrt(n) * interpolate(solution.u, x);
}

double exact_depth_uniform(Point2 x) { return 2.0 * std::sqrt(x[0] * x[1]); }

} // namespace pda
