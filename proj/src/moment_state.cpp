#include "hv/moment_state.hpp"

#include "hv/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace hv {

IndexSet::IndexSet(int max_order, int dim)
    : max_order_(max_order)
    , dim_(dim)
{
  if (max_order < 3) throw std::invalid_argument("index_set: M must be >= 3, got " + std::to_string(max_order));
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("index_set: D must be 1, 2 or 3, got " + std::to_string(dim));

  const int side = max_order + 1;
  const int c1 = dim > 1 ? side : 1;
  const int c2 = dim > 2 ? side : 1;
  order_begin_.assign(static_cast<std::size_t>(max_order) + 2, 0);
  for (int n = 0; n <= max_order; ++n) {
    order_begin_[n] = indices_.size();
    // lexicographic within an order: alpha_1 ascending, then alpha_2
    for (int a0 = 0; a0 <= n; ++a0)
      for (int a1 = 0; a1 < c1 && a0 + a1 <= n; ++a1) {
        const int a2 = n - a0 - a1;
        if (dim == 1 && a0 != n) continue;
        if (dim == 2 && a2 != 0) continue;
        if (a2 >= c2) continue;
        indices_.push_back(MultiIndex{{a0, a1, a2}});
      }
  }
  order_begin_[max_order + 1] = indices_.size();

  std::size_t table = 1;
  for (int d = 0; d < dim; ++d) table *= static_cast<std::size_t>(side);
  lookup_.assign(table, kNone);
  auto key = [&](const MultiIndex& a) {
    std::size_t k = 0;
    for (int d = dim - 1; d >= 0; --d) k = k * static_cast<std::size_t>(side) + static_cast<std::size_t>(a.c[d]);
    return k;
  };
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_[key(indices_[i])] = static_cast<int>(i);

  lower_.assign(indices_.size() * kMaxDim, kNone);
  raise_.assign(indices_.size() * kMaxDim, kNone);
  for (std::size_t i = 0; i < indices_.size(); ++i)
    for (int d = 0; d < dim; ++d) {
      MultiIndex a = indices_[i];
      a.c[d] -= 1;
      lower_[i * kMaxDim + d] = find(a);
      a.c[d] += 2;
      raise_[i * kMaxDim + d] = find(a);
    }
  for (int d = 0; d < dim; ++d) {
    unit_[d] = static_cast<std::size_t>(find(e(d)));
    MultiIndex two;
    two.c[d] = 2;
    twice_unit_[d] = static_cast<std::size_t>(find(two));
  }
}

int IndexSet::find(const MultiIndex& alpha) const
{
  int order = 0;
  for (int d = 0; d < kMaxDim; ++d) {
    if (alpha.c[d] < 0) return kNone;
    if (d >= dim_ && alpha.c[d] != 0) return kNone;
    order += alpha.c[d];
  }
  if (order > max_order_) return kNone;
  std::size_t k = 0;
  for (int d = dim_ - 1; d >= 0; --d) k = k * static_cast<std::size_t>(max_order_ + 1) + static_cast<std::size_t>(alpha.c[d]);
  return lookup_[k];
}

std::shared_ptr<const IndexSet> index_set(int max_order, int dim)
{
  return std::make_shared<const IndexSet>(max_order, dim);
}

GridState::GridState(std::shared_ptr<const IndexSet> b, std::size_t n_cells, double domain_length)
    : basis(std::move(b))
    , dx(domain_length / static_cast<double>(n_cells))
    , length(domain_length)
{
  if (n_cells == 0) throw std::invalid_argument("GridState: need at least one cell");
  if (!(domain_length > 0.0)) throw std::invalid_argument("GridState: domain length must be positive");
  cells.assign(n_cells, CellState(basis));
}

Macroscopic macroscopic(const CellState& cell)
{
  const IndexSet& basis = *cell.basis;
  const int dim = basis.dim();
  const double rho = cell.coeffs[0];
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw VacuumError("macroscopic: nonpositive density f_0 = " + std::to_string(rho));
  if (!(cell.theta > 0.0)) throw std::invalid_argument("macroscopic: theta must be positive");

  Macroscopic out;
  out.rho = rho;
  double shift2 = 0.0;
  double second = 0.0;
  for (int d = 0; d < dim; ++d) {
    const double du = cell.coeffs[basis.unit(d)] / rho;
    out.u[d] = cell.u[d] + du;
    shift2 += du * du;
    second += cell.coeffs[basis.twice_unit(d)];
  }
  // rho |u - u'|^2 + D rho theta = D rho theta' + 2 sum_d f_{2 e_d}
  out.theta = cell.theta + (2.0 * second - rho * shift2) / (dim * rho);
  if (!(out.theta > 0.0) || !std::isfinite(out.theta))
    throw VacuumError("macroscopic: nonpositive thermal velocity " + std::to_string(out.theta));
  return out;
}

DerivedMoments derived_moments(const CellState& cell)
{
  const IndexSet& basis = *cell.basis;
  const int dim = basis.dim();
  const double rho = cell.coeffs[0];
  DerivedMoments out;
  for (int i = 0; i < dim; ++i) {
    MultiIndex a;
    a.c[i] = 3;
    double qi = 2.0 * cell.coeff(a);
    for (int d = 0; d < dim; ++d) {
      MultiIndex b;
      b.c[d] += 2;
      b.c[i] += 1;
      qi += cell.coeff(b);
    }
    out.q[i] = qi;
    for (int j = 0; j < dim; ++j) {
      MultiIndex b;
      b.c[i] += 1;
      b.c[j] += 1;
      out.p[i][j] = (i == j ? rho * cell.theta : 0.0) + (i == j ? 2.0 : 1.0) * cell.coeff(b);
    }
  }
  return out;
}

CellState maxwellian_cell(std::shared_ptr<const IndexSet> basis, double rho, const Velocity& u, double theta)
{
  if (!(rho > 0.0)) throw std::invalid_argument("maxwellian_cell: rho must be positive");
  if (!(theta > 0.0)) throw std::invalid_argument("maxwellian_cell: theta must be positive");
  CellState cell(std::move(basis));
  cell.coeffs[0] = rho;
  cell.u = u;
  cell.theta = theta;
  return cell;
}

double eval_distribution(const CellState& cell, std::span<const double> v)
{
  const IndexSet& basis = *cell.basis;
  const int dim = basis.dim();
  const int m = basis.max_order();
  if (static_cast<int>(v.size()) < dim) throw std::invalid_argument("eval_distribution: velocity has too few components");

  // per-dimension basis factors (2 pi)^{-1/2} theta^{-(n+1)/2} He_n(xi) exp(-xi^2/2)
  std::array<std::vector<double>, kMaxDim> factor;
  const double sqrt_theta = std::sqrt(cell.theta);
  for (int d = 0; d < dim; ++d) {
    const double xi = (v[d] - cell.u[d]) / sqrt_theta;
    factor[d].resize(static_cast<std::size_t>(m) + 1);
    hermite_eval_all(xi, factor[d]);
    double scale = std::exp(-0.5 * xi * xi) / std::sqrt(2.0 * M_PI * cell.theta);
    for (int n = 0; n <= m; ++n) {
      factor[d][n] *= scale;
      scale /= sqrt_theta;
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    double term = cell.coeffs[i];
    for (int d = 0; d < dim; ++d) term *= factor[d][basis[i].c[d]];
    sum += term;
  }
  return sum;
}

std::string coefficient_label(const MultiIndex& alpha, int dim)
{
  std::string s = "f";
  for (int d = 0; d < dim; ++d) s += "_" + std::to_string(alpha.c[d]);
  return s;
}

void write_snapshot(std::ostream& os, const GridState& grid, bool with_coefficients)
{
  const IndexSet& basis = *grid.basis;
  os << "x,rho,u1,theta";
  if (with_coefficients)
    for (const auto& a : basis.indices()) os << ',' << coefficient_label(a, basis.dim());
  os << '\n';
  const auto old_precision = os.precision(17);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const CellState& c = grid.cells[j];
    os << grid.cell_center(j) << ',' << c.coeffs[0] << ',' << c.u[0] << ',' << c.theta;
    if (with_coefficients)
      for (double f : c.coeffs) os << ',' << f;
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace hv
