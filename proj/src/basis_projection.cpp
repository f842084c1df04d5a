#include "hv/basis_projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hv {

namespace {

constexpr double kSeriesCutoff = 1e-18;

// Taylor coefficients of exp(a x + b x^2) up to degree max_order, truncated
// where the scaled tail is negligible. Returns the number of kept terms.
std::size_t shift_series(double a, double b, double scale, int max_order, std::vector<double>& c)
{
  c.assign(static_cast<std::size_t>(max_order) + 1, 0.0);
  c[0] = 1.0;
  if (a == 0.0 && b == 0.0) return 1;
  if (max_order >= 1) c[1] = a;

  // Positive majorant exp(|a| x + |b| x^2), measured in units of `scale`
  // (coefficients of order n carry roughly scale^n).
  const double ah = std::abs(a) / scale;
  const double bh = std::abs(b) / (scale * scale);
  const double k_min = 4.0 + 2.0 * (ah + std::sqrt(bh)) * (ah + std::sqrt(bh));
  double maj_prev2 = 1.0, maj_prev = ah;
  for (int k = 2; k <= max_order; ++k) {
    c[k] = (a * c[k - 1] + 2.0 * b * c[k - 2]) / k;
    const double maj = (ah * maj_prev + 2.0 * bh * maj_prev2) / k;
    if (k >= k_min && maj < kSeriesCutoff && maj_prev < kSeriesCutoff) return static_cast<std::size_t>(k);
    maj_prev2 = maj_prev;
    maj_prev = maj;
  }
  return static_cast<std::size_t>(max_order) + 1;
}

void check_theta(double theta, const char* who)
{
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::invalid_argument(std::string(who) + ": thermal velocity must be positive");
}

}  // namespace

void project_coefficients(const IndexSet& basis, std::span<const double> in, const Velocity& u_from,
                          double theta_from, const Velocity& u_to, double theta_to, std::span<double> out)
{
  check_theta(theta_from, "project");
  check_theta(theta_to, "project");
  const std::size_t n = basis.size();
  const int m = basis.max_order();
  const int dim = basis.dim();
  const double b = 0.5 * (theta_from - theta_to);
  const double scale = std::sqrt(theta_to);

  thread_local std::vector<double> series;
  thread_local std::vector<double> scratch;

  if (dim == 1) {
    const std::size_t kept = shift_series(u_from[0] - u_to[0], b, scale, m, series);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t top = std::min(i + 1, kept);
      double sum = 0.0;
      for (std::size_t k = top; k-- > 0;) sum += series[k] * in[i - k];
      out[i] = sum;
    }
    return;
  }

  // Separable: one convolution per velocity direction.
  scratch.assign(in.begin(), in.end());
  for (int d = 0; d < dim; ++d) {
    const std::size_t kept = shift_series(u_from[d] - u_to[d], b, scale, m, series);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = series[0] * scratch[i];
      int pos = basis.lower(i, d);
      for (std::size_t k = 1; k < kept && pos != IndexSet::kNone; ++k) {
        sum += series[k] * scratch[static_cast<std::size_t>(pos)];
        pos = basis.lower(static_cast<std::size_t>(pos), d);
      }
      out[i] = sum;
    }
    if (d + 1 < dim) std::copy(out.begin(), out.end(), scratch.begin());
  }
}

CellState project(const CellState& cell, const Velocity& u2, double theta2)
{
  CellState out(cell.basis);
  project_coefficients(*cell.basis, cell.coeffs, cell.u, cell.theta, u2, theta2, out.coeffs);
  out.u = u2;
  out.theta = theta2;
  return out;
}

CellState project_by_ode(const CellState& cell, const Velocity& u2, double theta2, int max_substeps,
                         double tolerance)
{
  check_theta(cell.theta, "project_by_ode");
  check_theta(theta2, "project_by_ode");
  const IndexSet& basis = *cell.basis;
  const int dim = basis.dim();
  const std::size_t n = basis.size();
  const double theta1 = cell.theta;
  const double ratio = std::sqrt(theta1 / theta2);
  const double sqrt_theta1 = std::sqrt(theta1);
  Velocity w{};
  for (int d = 0; d < dim; ++d) w[d] = (cell.u[d] - u2[d]) / std::sqrt(theta2);

  auto rhs = [&](double tau, const std::vector<double>& f, std::vector<double>& df) {
    const double denom = (ratio - 1.0) * tau + 1.0;
    const double r = (ratio - 1.0) / denom;
    const double s2 = 1.0 / (denom * denom);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int d = 0; d < dim; ++d) {
        const int lo = basis.lower(i, d);
        if (lo == IndexSet::kNone) continue;
        acc += w[d] * sqrt_theta1 * f[static_cast<std::size_t>(lo)];
        const int lo2 = basis.lower(static_cast<std::size_t>(lo), d);
        if (lo2 != IndexSet::kNone) acc += theta1 * r * f[static_cast<std::size_t>(lo2)];
      }
      df[i] = s2 * acc;
    }
  };

  auto integrate = [&](int steps) {
    std::vector<double> f = cell.coeffs, k1(n), k2(n), k3(n), k4(n), tmp(n);
    const double h = 1.0 / steps;
    for (int s = 0; s < steps; ++s) {
      const double t = s * h;
      rhs(t, f, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k1[i];
      rhs(t + 0.5 * h, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + 0.5 * h * k2[i];
      rhs(t + 0.5 * h, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = f[i] + h * k3[i];
      rhs(t + h, tmp, k4);
      for (std::size_t i = 0; i < n; ++i) f[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return f;
  };

  std::vector<double> coarse = integrate(1);
  int steps = 1;
  while (steps < max_substeps) {
    steps *= 2;
    std::vector<double> fine = integrate(steps);
    double diff = 0.0, size = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diff = std::max(diff, std::abs(fine[i] - coarse[i]));
      size = std::max(size, std::abs(fine[i]));
    }
    coarse = std::move(fine);
    if (diff <= tolerance * size) break;
  }

  CellState out(cell.basis);
  out.coeffs = std::move(coarse);
  out.u = u2;
  out.theta = theta2;
  return out;
}

CellState reexpand_equilibrium(const CellState& cell)
{
  const Macroscopic mac = macroscopic(cell);
  CellState out = project(cell, mac.u, mac.theta);
  const IndexSet& basis = *cell.basis;
  const int dim = basis.dim();
  // These vanish analytically in the new frame; clear the rounding residue.
  double trace = 0.0;
  for (int d = 0; d < dim; ++d) {
    out.coeffs[basis.unit(d)] = 0.0;
    trace += out.coeffs[basis.twice_unit(d)];
  }
  for (int d = 0; d < dim; ++d) out.coeffs[basis.twice_unit(d)] -= trace / dim;
  return out;
}

void multiply_v1_coefficients(const IndexSet& basis, std::span<const double> in, double u1, double theta,
                              std::span<double> out)
{
  const std::size_t n = basis.size();
  if (basis.dim() == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = u1 * in[i];
      if (i > 0) v += theta * in[i - 1];
      if (i + 1 < n) v += static_cast<double>(i + 1) * in[i + 1];
      out[i] = v;
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = u1 * in[i];
    const int lo = basis.lower(i, 0);
    if (lo != IndexSet::kNone) v += theta * in[static_cast<std::size_t>(lo)];
    const int hi = basis.raise(i, 0);
    if (hi != IndexSet::kNone) v += static_cast<double>(basis[i].c[0] + 1) * in[static_cast<std::size_t>(hi)];
    out[i] = v;
  }
}

CellState multiply_v1_truncate(const CellState& cell)
{
  CellState out(cell.basis);
  multiply_v1_coefficients(*cell.basis, cell.coeffs, cell.u[0], cell.theta, out.coeffs);
  out.u = cell.u;
  out.theta = cell.theta;
  return out;
}

}  // namespace hv
