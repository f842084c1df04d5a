#pragma once

#include "hv/moment_state.hpp"

#include <vector>

namespace hv {

struct SignalSpeeds
{
  double left = 0.0;
  double right = 0.0;
};

/// Which moment system the transport step discretizes. `Grad` drops the
/// hyperbolicity correction on the top-order coefficients.
enum class Closure
{
  Regularized,
  Grad,
};

/// Fastest left/right signal speeds at the interface between two cells,
/// u_1 -/+ C sqrt(theta), with C the greatest zero of He_{M+1}.
SignalSpeeds signal_speeds(const CellState& left, const CellState& right, double max_zero);
SignalSpeeds signal_speeds(const CellState& left, const CellState& right, int max_order);

/// HLL flux of v_1 f between `left` and `right`, expressed in the frame
/// (u, theta). Each state's v_1 f is formed in its own frame and then
/// projected into the target frame.
CellState hll_flux(const CellState& left, const CellState& right, const Velocity& u, double theta, double max_zero);
CellState hll_flux(const CellState& left, const CellState& right, const Velocity& u, double theta, int max_order);

/// Increment of cell j's coefficients from the regularization term, using
/// centred differences of u and theta. Nonzero only for |alpha| = M.
std::vector<double> regularization_increment(const GridState& grid, std::size_t j, double dt);

/// One finite-volume transport step followed by re-expansion of every cell
/// into its equilibrium frame. Throws VacuumError if a density goes nonpositive.
GridState convection_step(const GridState& grid, double dt, Closure closure = Closure::Regularized);
GridState convection_step(const GridState& grid, double dt, double max_zero, Closure closure = Closure::Regularized);

}  // namespace hv
