#ifndef PDA_HJE_SOLVER_HPP
#define PDA_HJE_SOLVER_HPP

#include "pda/grid_field.hpp"

namespace pda {

/// Numerical depth surface u_h together with the right-hand side it solved.
struct HjeSolution {
    GridField u;
    GridField f_used;
};

/// Solves D-_1 u * D-_2 u = f on the grid with u = 0 on {x1 = 0} and
/// {x2 = 0}, sweeping nodes once in increasing (i, j). Each node takes the
/// larger root of (u - a)(u - b) = h^2 f, with a, b its west and south values.
///
/// Throws std::domain_error if any node of f is not strictly positive.
[[nodiscard]] HjeSolution solve_hje(GridField f);

/// Continuum estimate sqrt(n) * u(x) of the Pareto depth of x among n
/// samples (C_2 = 1).
[[nodiscard]] double depth_estimate(const HjeSolution& solution, Point2 x, double n);

/// Closed-form solution 2 sqrt(x1 x2) for f = 1.
[[nodiscard]] double exact_depth_uniform(Point2 x);

} // namespace pda

#endif
