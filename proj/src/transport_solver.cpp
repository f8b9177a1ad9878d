#include "pda/transport_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pda {

namespace {
    void check_compatible(const HjeSolution& hje, const GridField& f)
    {
        if (hje.u.resolution() != f.resolution()) {
            throw std::invalid_argument("transport solver: u and f live on different grids");
        }
    }
} // namespace

UpwindGradient upwind_gradient(const GridField& u, Node node)
{
    const double g1 = node.i == 0 ? forward_diff(u, node, Axis::x1) : backward_diff(u, node, Axis::x1);
    const double g2 = node.j == 0 ? forward_diff(u, node, Axis::x2) : backward_diff(u, node, Axis::x2);
    return {std::max(g1, 0.0), std::max(g2, 0.0)};
}

GridField solve_v(const HjeSolution& hje, const GridField& f)
{
    check_compatible(hje, f);
    const std::size_t k = f.resolution();
    const double h = f.spacing();
    GridField v(k, 0.0);
    for (std::size_t i = 1; i <= k; ++i) {
        for (std::size_t j = k; j-- > 0;) {
            const auto g = upwind_gradient(hje.u, {i, j});
            const double denom = g.g1 + g.g2;
            if (!(denom > 0.0)) {
                throw std::domain_error("solve_v: degenerate velocity (u_x1 + u_x2 = 0)");
            }
            v(i, j) = (g.g2 * v(i - 1, j) + g.g1 * v(i, j + 1) + h * f(i, j)) / denom;
        }
    }
    return v;
}

GridField solve_w(const HjeSolution& hje, const GridField& v, const GridField& f)
{
    check_compatible(hje, f);
    if (v.resolution() != f.resolution()) {
        throw std::invalid_argument("solve_w: v and f live on different grids");
    }
    const std::size_t k = f.resolution();
    const double h = f.spacing();
    GridField w(k, 1.0);
    for (std::size_t i = k; i-- > 0;) {
        for (std::size_t j = 1; j <= k; ++j) {
            const auto g = upwind_gradient(hje.u, {i, j});
            const double east = v(i, j) * g.g2;
            const double south = v(i, j) * g.g1;
            const double denom = h * f(i, j) + east + south;
            if (!(denom > 0.0)) {
                throw std::domain_error("solve_w: zero denominator");
            }
            w(i, j) = (east * w(i + 1, j) + south * w(i, j - 1)) / denom;
        }
    }
    return w;
}

TransportSolution solve_transport(const HjeSolution& hje)
{
    GridField v = solve_v(hje, hje.f_used);
    GridField w = solve_w(hje, v, hje.f_used);
    return {std::move(v), std::move(w), hje};
}

double exact_v_uniform(Point2 x) { return -std::log(x[1]) * std::sqrt(x[0] * x[1]); }

double exact_w_uniform(Point2 x) { return std::log(x[1]) / (std::log(x[0]) + std::log(x[1])); }

} // namespace pda
