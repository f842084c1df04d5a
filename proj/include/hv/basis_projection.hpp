#pragma once

#include "hv/moment_state.hpp"

#include <span>

namespace hv {

/// Rewrites the coefficients `in` of a distribution expanded in frame
/// (u_from, theta_from) as coefficients in frame (u_to, theta_to) such that
/// every velocity moment of degree <= M is preserved. `out` must not alias `in`.
///
/// The map is the exact solution of the triangular transport ODE
///   dF_a/dtau = S^2 sum_d [theta_from R F_{a-2e_d} + w_d sqrt(theta_from) F_{a-e_d}],
/// which, written on the generating polynomial sum_a F_a x^a, multiplies it by
///   exp( sum_d (u_from_d - u_to_d) x_d + (theta_from - theta_to)/2 |x|^2 )
/// and truncates at total degree M. Per dimension this is a convolution with
/// the Taylor coefficients of exp(a x + b x^2); the tail of that series is cut
/// once it falls below double precision.
void project_coefficients(const IndexSet& basis, std::span<const double> in, const Velocity& u_from,
                          double theta_from, const Velocity& u_to, double theta_to, std::span<double> out);

/// Same distribution, expanded in frame (u2, theta2).
CellState project(const CellState& cell, const Velocity& u2, double theta2);

/// Reference route for project(): integrates the transport ODE in tau with
/// classical RK4, doubling the substep count until two successive results
/// agree to `tolerance` (relative to the largest coefficient) or
/// `max_substeps` is reached. Used to cross-check the closed form.
CellState project_by_ode(const CellState& cell, const Velocity& u2, double theta2, int max_substeps = 64,
                         double tolerance = 1e-11);

/// Moves the cell into its own (rho, u, theta) frame, where f_{e_i} = 0 and
/// sum_d f_{2 e_d} = 0. Throws VacuumError for f_0 <= 0.
CellState reexpand_equilibrium(const CellState& cell);

/// Coefficients of v_1 f in the same frame, dropping the order M+1 part:
///   out_a = theta f_{a-e_1} + u_1 f_a + (a_1 + 1) f_{a+e_1}.
CellState multiply_v1_truncate(const CellState& cell);

void multiply_v1_coefficients(const IndexSet& basis, std::span<const double> in, double u1, double theta,
                              std::span<double> out);

}  // namespace hv
