#pragma once

#include "hv/moment_state.hpp"

#include <optional>
#include <span>
#include <vector>

namespace hv {

/// Charge, mass and permittivity of the single particle species, plus the
/// neutralizing background density. With no fixed background the mean
/// density is used, which makes the potential blind to constant shifts.
struct ChargeParams
{
  double q = 1.0;
  double m = 1.0;
  double eps0 = 1.0;
  std::optional<double> background = 1.0;
};

struct FieldState
{
  std::vector<double> psi;
  std::vector<double> efield;
  ChargeParams params;
};

/// Solves -(psi_{j+1} - 2 psi_j + psi_{j-1}) / dx^2 = rhs_j on a periodic
/// grid with the gauge sum_j psi_j = 0. Rejects right sides whose mean
/// exceeds 1e-10 of their scale (the periodic problem is then unsolvable).
std::vector<double> solve_periodic_poisson(std::span<const double> rhs, double dx);

/// Potential from cell densities: rhs = q (rho - background) / eps0.
std::vector<double> solve_poisson(std::span<const double> rho, double dx, const ChargeParams& params = {});

/// E_j = -(psi_{j+1} - psi_{j-1}) / (2 dx), periodic.
std::vector<double> electric_field(std::span<const double> psi, double dx);

/// Poisson solve plus field evaluation for the grid's current densities.
FieldState compute_fields(const GridState& grid, const ChargeParams& params = {});

/// Exact velocity translation u_1 += dt (q/m) E_j; coefficients and theta untouched.
GridState acceleration_step(const GridState& grid, std::span<const double> efield, double dt,
                            const ChargeParams& params = {});

/// BGK relaxation: f_a *= exp(-nu dt) for 2 <= |a| <= M. Identity for nu == 0.
GridState bgk_step(const GridState& grid, double nu, double dt);

}  // namespace hv
