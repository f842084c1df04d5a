#include "hv/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hv {

std::vector<double> solve_periodic_poisson(std::span<const double> rhs, double dx)
{
  if (!(dx > 0.0)) throw std::invalid_argument("solve_poisson: dx must be positive");
  const std::size_t n = rhs.size();
  if (n == 0) return {};

  long double mean = 0.0L;
  double scale = 0.0;
  for (double r : rhs) {
    mean += r;
    scale = std::max(scale, std::abs(r));
  }
  mean /= static_cast<long double>(n);
  if (std::abs(static_cast<double>(mean)) > 1e-10 * std::max(scale, 1.0))
    throw std::invalid_argument("solve_poisson: right side has nonzero mean " +
                                std::to_string(static_cast<double>(mean)) + "; periodic problem is not solvable");

  std::vector<double> psi(n, 0.0);
  if (n == 1) return psi;

  // Pin psi_0 = 0; the remaining n-1 unknowns form a Dirichlet tridiagonal
  // system (diagonal 2, off-diagonal -1). The row for j = 0 then holds
  // automatically because the right side has zero mean.
  const long double h2 = static_cast<long double>(dx) * dx;
  const std::size_t m = n - 1;
  std::vector<long double> cprime(m), dprime(m);
  long double denom = 2.0L;
  cprime[0] = -1.0L / denom;
  dprime[0] = h2 * (rhs[1] - mean) / denom;
  for (std::size_t i = 1; i < m; ++i) {
    denom = 2.0L + cprime[i - 1];
    cprime[i] = -1.0L / denom;
    dprime[i] = (h2 * (rhs[i + 1] - mean) + dprime[i - 1]) / denom;
  }
  std::vector<long double> x(m);
  x[m - 1] = dprime[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = dprime[i] - cprime[i] * x[i + 1];

  long double shift = 0.0L;
  for (long double v : x) shift += v;
  shift /= static_cast<long double>(n);
  psi[0] = static_cast<double>(-shift);
  for (std::size_t i = 0; i < m; ++i) psi[i + 1] = static_cast<double>(x[i] - shift);
  return psi;
}

std::vector<double> solve_poisson(std::span<const double> rho, double dx, const ChargeParams& params)
{
  if (!(params.eps0 > 0.0)) throw std::invalid_argument("solve_poisson: eps0 must be positive");
  double background = 0.0;
  if (params.background) {
    background = *params.background;
  } else if (!rho.empty()) {
    background = std::accumulate(rho.begin(), rho.end(), 0.0) / static_cast<double>(rho.size());
  }
  std::vector<double> rhs(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) rhs[j] = params.q * (rho[j] - background) / params.eps0;
  return solve_periodic_poisson(rhs, dx);
}

std::vector<double> electric_field(std::span<const double> psi, double dx)
{
  const std::size_t n = psi.size();
  std::vector<double> e(n, 0.0);
  if (n < 2) return e;
  for (std::size_t j = 0; j < n; ++j) {
    const double hi = psi[j + 1 == n ? 0 : j + 1];
    const double lo = psi[j == 0 ? n - 1 : j - 1];
    e[j] = -(hi - lo) / (2.0 * dx);
  }
  return e;
}

FieldState compute_fields(const GridState& grid, const ChargeParams& params)
{
  std::vector<double> rho(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) rho[j] = grid.cells[j].coeffs[0];
  FieldState out;
  out.params = params;
  out.psi = solve_poisson(rho, grid.dx, params);
  out.efield = electric_field(out.psi, grid.dx);
  return out;
}

GridState acceleration_step(const GridState& grid, std::span<const double> efield, double dt,
                            const ChargeParams& params)
{
  if (efield.size() != grid.size()) throw std::invalid_argument("acceleration_step: field size does not match grid");
  if (!(params.m > 0.0)) throw std::invalid_argument("acceleration_step: particle mass must be positive");
  GridState next = grid;
  const double qm = params.q / params.m;
  for (std::size_t j = 0; j < grid.size(); ++j) next.cells[j].u[0] += dt * qm * efield[j];
  return next;
}

GridState bgk_step(const GridState& grid, double nu, double dt)
{
  if (nu < 0.0 || !std::isfinite(nu)) throw std::invalid_argument("bgk_step: collision frequency must be >= 0");
  if (nu == 0.0) return grid;
  GridState next = grid;
  const double decay = std::exp(-nu * dt);
  const std::size_t start = grid.basis->order_begin(2);
  for (CellState& c : next.cells)
    for (std::size_t i = start; i < c.coeffs.size(); ++i) c.coeffs[i] *= decay;
  return next;
}

}  // namespace hv
