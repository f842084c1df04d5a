#include "hv/convection.hpp"

#include "hv/basis_projection.hpp"
#include "hv/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hv {

namespace {

bool same_frame(const Velocity& u1, double theta1, const Velocity& u2, double theta2)
{
  return u1 == u2 && theta1 == theta2;
}

// out += P(in) where P maps frame (u_from, theta_from) to (u_to, theta_to).
void add_projected(const IndexSet& basis, std::span<const double> in, const Velocity& u_from, double theta_from,
                   const Velocity& u_to, double theta_to, std::span<double> out, std::vector<double>& scratch)
{
  if (same_frame(u_from, theta_from, u_to, theta_to)) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += in[i];
    return;
  }
  scratch.resize(out.size());
  project_coefficients(basis, in, u_from, theta_from, u_to, theta_to, scratch);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scratch[i];
}

// Splits the HLL flux into the part carried by each side:
//   F = left_part + right_part (each still in its own cell's frame).
// An empty side is flagged false.
struct HllParts
{
  bool has_left = false;
  bool has_right = false;
};

HllParts hll_parts(const SignalSpeeds& s, std::span<const double> f_left, std::span<const double> vf_left,
                   std::span<const double> f_right, std::span<const double> vf_right, std::span<double> left_part,
                   std::span<double> right_part)
{
  const std::size_t n = left_part.size();
  if (s.left >= 0.0) {
    std::copy(vf_left.begin(), vf_left.end(), left_part.begin());
    return {true, false};
  }
  if (s.right <= 0.0) {
    std::copy(vf_right.begin(), vf_right.end(), right_part.begin());
    return {false, true};
  }
  const double inv = 1.0 / (s.right - s.left);
  const double lr = s.left * s.right;
  for (std::size_t i = 0; i < n; ++i) {
    left_part[i] = (s.right * vf_left[i] - lr * f_left[i]) * inv;
    right_part[i] = (lr * f_right[i] - s.left * vf_right[i]) * inv;
  }
  return {true, true};
}

void regularization_into(const GridState& grid, std::size_t j, double dt, std::span<double> out)
{
  const IndexSet& basis = *grid.basis;
  const int dim = basis.dim();
  const CellState& cell = grid.cells[j];
  const CellState& lo = grid.cells[grid.left(j)];
  const CellState& hi = grid.cells[grid.right(j)];
  const double inv2dx = 1.0 / (2.0 * grid.dx);
  Velocity grad_u{};
  for (int d = 0; d < dim; ++d) grad_u[d] = (hi.u[d] - lo.u[d]) * inv2dx;
  const double grad_theta = (hi.theta - lo.theta) * inv2dx;

  const int m = basis.max_order();
  for (std::size_t i = basis.order_begin(m); i < basis.size(); ++i) {
    const MultiIndex& a = basis[i];
    double acc = 0.0;
    for (int d = 0; d < dim; ++d) {
      MultiIndex b = a;
      b.c[d] -= 1;
      b.c[0] += 1;
      acc += cell.coeff(b) * grad_u[d];
      b.c[d] -= 1;
      acc += 0.5 * cell.coeff(b) * grad_theta;
    }
    // Cancels the top-order terms (a_1+1)(f_{a-e_d+e_1} du_d/dx + f_{a-2e_d+e_1} dtheta/dx / 2)
    // that the conservative flux of the truncated v_1 f carries.
    out[i] += dt * (a.c[0] + 1) * acc;
  }
}

}  // namespace

SignalSpeeds signal_speeds(const CellState& left, const CellState& right, double max_zero)
{
  const double sl = max_zero * std::sqrt(left.theta);
  const double sr = max_zero * std::sqrt(right.theta);
  return {std::min(left.u[0] - sl, right.u[0] - sr), std::max(left.u[0] + sl, right.u[0] + sr)};
}

SignalSpeeds signal_speeds(const CellState& left, const CellState& right, int max_order)
{
  return signal_speeds(left, right, greatest_zero(max_order + 1));
}

CellState hll_flux(const CellState& left, const CellState& right, const Velocity& u, double theta, double max_zero)
{
  const IndexSet& basis = *left.basis;
  const std::size_t n = basis.size();
  const SignalSpeeds s = signal_speeds(left, right, max_zero);
  const CellState vl = multiply_v1_truncate(left);
  const CellState vr = multiply_v1_truncate(right);
  std::vector<double> lp(n, 0.0), rp(n, 0.0), scratch;
  const HllParts parts = hll_parts(s, left.coeffs, vl.coeffs, right.coeffs, vr.coeffs, lp, rp);

  CellState out(left.basis);
  out.u = u;
  out.theta = theta;
  if (parts.has_left) add_projected(basis, lp, left.u, left.theta, u, theta, out.coeffs, scratch);
  if (parts.has_right) add_projected(basis, rp, right.u, right.theta, u, theta, out.coeffs, scratch);
  return out;
}

CellState hll_flux(const CellState& left, const CellState& right, const Velocity& u, double theta, int max_order)
{
  return hll_flux(left, right, u, theta, greatest_zero(max_order + 1));
}

std::vector<double> regularization_increment(const GridState& grid, std::size_t j, double dt)
{
  std::vector<double> out(grid.basis->size(), 0.0);
  regularization_into(grid, j, dt, out);
  return out;
}

GridState convection_step(const GridState& grid, double dt, Closure closure)
{
  return convection_step(grid, dt, greatest_zero(grid.basis->max_order() + 1), closure);
}

GridState convection_step(const GridState& grid, double dt, double max_zero, Closure closure)
{
  if (!(dt > 0.0)) throw std::invalid_argument("convection_step: dt must be positive");
  const IndexSet& basis = *grid.basis;
  const std::size_t n = basis.size();
  const std::size_t cells = grid.size();

  // v_1 f of every cell in its own frame
  std::vector<double> vf(cells * n);
  for (std::size_t j = 0; j < cells; ++j) {
    const CellState& c = grid.cells[j];
    multiply_v1_coefficients(basis, c.coeffs, c.u[0], c.theta, std::span<double>(vf).subspan(j * n, n));
  }

  // Interface j+1/2 flux, once in cell j's frame and once in cell j+1's.
  std::vector<double> flux_lo(cells * n, 0.0);  // in frame of the cell to the left
  std::vector<double> flux_hi(cells * n, 0.0);  // in frame of the cell to the right
  std::vector<double> lp(n), rp(n), scratch(n);
  for (std::size_t j = 0; j < cells; ++j) {
    const std::size_t k = grid.right(j);
    const CellState& a = grid.cells[j];
    const CellState& b = grid.cells[k];
    const SignalSpeeds s = signal_speeds(a, b, max_zero);
    std::span<const double> vfa(vf.data() + j * n, n), vfb(vf.data() + k * n, n);
    const HllParts parts = hll_parts(s, a.coeffs, vfa, b.coeffs, vfb, lp, rp);
    std::span<double> in_a(flux_lo.data() + j * n, n), in_b(flux_hi.data() + j * n, n);
    if (parts.has_left) {
      add_projected(basis, lp, a.u, a.theta, a.u, a.theta, in_a, scratch);
      add_projected(basis, lp, a.u, a.theta, b.u, b.theta, in_b, scratch);
    }
    if (parts.has_right) {
      add_projected(basis, rp, b.u, b.theta, a.u, a.theta, in_a, scratch);
      add_projected(basis, rp, b.u, b.theta, b.u, b.theta, in_b, scratch);
    }
  }

  GridState next = grid;
  const double ratio = dt / grid.dx;
  std::vector<double> k2(n);
  for (std::size_t j = 0; j < cells; ++j) {
    const std::size_t jl = grid.left(j);
    std::vector<double>& f = next.cells[j].coeffs;
    const double* right_flux = flux_lo.data() + j * n;
    const double* left_flux = flux_hi.data() + jl * n;
    for (std::size_t i = 0; i < n; ++i) f[i] -= ratio * (right_flux[i] - left_flux[i]);
    if (closure == Closure::Regularized) {
      std::fill(k2.begin(), k2.end(), 0.0);
      regularization_into(grid, j, dt, k2);
      for (std::size_t i = basis.order_begin(basis.max_order()); i < n; ++i) f[i] += k2[i];
    }
  }

  for (std::size_t j = 0; j < cells; ++j) {
    CellState& c = next.cells[j];
    if (!(c.coeffs[0] > 0.0) || !std::isfinite(c.coeffs[0]))
      throw VacuumError("convection_step: nonpositive density " + std::to_string(c.coeffs[0]) + " in cell " +
                            std::to_string(j),
                        static_cast<std::ptrdiff_t>(j));
    try {
      c = reexpand_equilibrium(c);
    } catch (const VacuumError& e) {
      throw VacuumError(std::string(e.what()) + " in cell " + std::to_string(j), static_cast<std::ptrdiff_t>(j));
    }
  }
  return next;
}

}  // namespace hv
