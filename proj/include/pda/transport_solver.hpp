#ifndef PDA_TRANSPORT_SOLVER_HPP
#define PDA_TRANSPORT_SOLVER_HPP

#include "pda/grid_field.hpp"
#include "pda/hje_solver.hpp"

namespace pda {

/// Discrete (u_x1, u_x2) used as transport velocity: backward differences of
/// u_h clamped at 0, forward differences on the i = 0 / j = 0 lines.
struct UpwindGradient {
    double g1 = 0.0;
    double g2 = 0.0;
};
[[nodiscard]] UpwindGradient upwind_gradient(const GridField& u, Node node);

/// Within-front index surface v: u_x2 D-_1 v - u_x1 D+_2 v = f with
/// v = 0 on {x1 = 0} and {x2 = 1}; one sweep in direction (1, -1).
[[nodiscard]] GridField solve_v(const HjeSolution& hje, const GridField& f);

/// Normalised within-front index w: v u_x2 D+_1 w - v u_x1 D-_2 w = w f with
/// w = 1 on {x1 = 1} and {x2 = 0}; one sweep in direction (-1, 1).
[[nodiscard]] GridField solve_w(const HjeSolution& hje, const GridField& v, const GridField& f);

struct TransportSolution {
    GridField v;
    GridField w;
    HjeSolution u_source;
};

/// solve_v then solve_w on hje.f_used.
[[nodiscard]] TransportSolution solve_transport(const HjeSolution& hje);

/// Closed forms for f = 1: v = -log(x2) sqrt(x1 x2), w = log x2 / (log x1 + log x2).
[[nodiscard]] double exact_v_uniform(Point2 x);
[[nodiscard]] double exact_w_uniform(Point2 x);

} // namespace pda

#endif
