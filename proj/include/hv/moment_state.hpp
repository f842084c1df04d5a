#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hv {

inline constexpr int kMaxDim = 3;

/// Velocity-space vector; only the first D entries are meaningful.
using Velocity = std::array<double, kMaxDim>;

/// Raised when a cell's density is nonpositive or not finite.
class VacuumError : public std::runtime_error
{
 public:
  VacuumError(const std::string& what, std::ptrdiff_t cell = -1)
      : std::runtime_error(what)
      , cell_(cell)
  {
  }
  std::ptrdiff_t cell() const { return cell_; }

 private:
  std::ptrdiff_t cell_;
};

/// Multi-index alpha in N^D. Unused trailing components are zero.
struct MultiIndex
{
  std::array<int, kMaxDim> c{};

  int order() const { return c[0] + c[1] + c[2]; }
  int operator[](int d) const { return c[d]; }
  auto operator<=>(const MultiIndex&) const = default;
};

/// The truncation set {alpha : |alpha| <= M} in graded-lexicographic order,
/// with neighbour tables for alpha +/- e_d.
class IndexSet
{
 public:
  static constexpr int kNone = -1;

  IndexSet(int max_order, int dim);

  int max_order() const { return max_order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return indices_.size(); }

  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// Flat position of alpha, or kNone if any component is negative or |alpha| > M.
  int find(const MultiIndex& alpha) const;

  /// Flat position of alpha - e_d (kNone when alpha_d == 0).
  int lower(std::size_t i, int d) const { return lower_[i * kMaxDim + d]; }
  /// Flat position of alpha + e_d (kNone when |alpha| == M).
  int raise(std::size_t i, int d) const { return raise_[i * kMaxDim + d]; }

  /// Flat positions of e_d and 2 e_d.
  std::size_t unit(int d) const { return unit_[d]; }
  std::size_t twice_unit(int d) const { return twice_unit_[d]; }

  /// First flat position of the given total order; order_begin(M+1) == size().
  std::size_t order_begin(int order) const { return order_begin_[order]; }

  static MultiIndex e(int d)
  {
    MultiIndex a;
    a.c[d] = 1;
    return a;
  }

 private:
  int max_order_;
  int dim_;
  std::vector<MultiIndex> indices_;
  std::vector<int> lookup_;  // dense (M+1)^D table
  std::vector<int> lower_;
  std::vector<int> raise_;
  std::vector<std::size_t> order_begin_;
  std::array<std::size_t, kMaxDim> unit_{};
  std::array<std::size_t, kMaxDim> twice_unit_{};
};

/// Builds the truncation set; rejects M < 3 and D outside {1,2,3}.
std::shared_ptr<const IndexSet> index_set(int max_order, int dim);

/// Hermite coefficients of one cell plus the expansion frame (u, theta).
struct CellState
{
  std::shared_ptr<const IndexSet> basis;
  std::vector<double> coeffs;
  Velocity u{};
  double theta = 1.0;

  CellState() = default;
  explicit CellState(std::shared_ptr<const IndexSet> b)
      : basis(std::move(b))
      , coeffs(basis->size(), 0.0)
  {
  }

  int dim() const { return basis->dim(); }
  /// Total accessor: zero for negative components or orders above M.
  double coeff(const MultiIndex& alpha) const
  {
    const int i = basis->find(alpha);
    return i == IndexSet::kNone ? 0.0 : coeffs[static_cast<std::size_t>(i)];
  }
  double density() const { return coeffs[0]; }
};

/// Periodic 1D array of cells.
struct GridState
{
  std::shared_ptr<const IndexSet> basis;
  std::vector<CellState> cells;
  double dx = 0.0;
  double length = 0.0;
  double time = 0.0;

  GridState() = default;
  GridState(std::shared_ptr<const IndexSet> b, std::size_t n_cells, double domain_length);

  std::size_t size() const { return cells.size(); }
  double cell_center(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dx; }
  std::size_t left(std::size_t j) const { return j == 0 ? cells.size() - 1 : j - 1; }
  std::size_t right(std::size_t j) const { return j + 1 == cells.size() ? 0 : j + 1; }
};

struct Macroscopic
{
  double rho = 0.0;
  Velocity u{};
  double theta = 0.0;
};

/// Density, velocity and thermal velocity of the cell's distribution,
/// independent of the frame it is currently expanded in.
Macroscopic macroscopic(const CellState& cell);

struct DerivedMoments
{
  Velocity q{};                                   ///< heat flux
  std::array<std::array<double, kMaxDim>, kMaxDim> p{};  ///< pressure tensor
};

/// Heat flux and pressure tensor of a cell in its equilibrium frame.
DerivedMoments derived_moments(const CellState& cell);

CellState maxwellian_cell(std::shared_ptr<const IndexSet> basis, double rho, const Velocity& u, double theta);

/// Pointwise value of the truncated expansion at velocity v.
double eval_distribution(const CellState& cell, std::span<const double> v);

/// Snapshot CSV: x,rho,u1,theta and optionally one f_<alpha> column per coefficient.
void write_snapshot(std::ostream& os, const GridState& grid, bool with_coefficients = false);

/// Column label used for a coefficient in snapshot files, e.g. "f_3" or "f_1_0_2".
std::string coefficient_label(const MultiIndex& alpha, int dim);

}  // namespace hv
