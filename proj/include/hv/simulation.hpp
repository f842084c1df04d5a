#pragma once

#include "hv/convection.hpp"
#include "hv/fields.hpp"
#include "hv/moment_state.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hv {

/// Run parameters of a linear Landau damping simulation.
struct SimConfig
{
  int M = 0;           ///< truncation order, >= 3
  int D = 1;           ///< velocity dimension
  int N = 0;           ///< number of cells
  double k = 0.0;      ///< wave number; the periodic length is 2 pi / k
  double A = 0.01;     ///< perturbation amplitude, |A| < 1
  double nu = 0.0;     ///< BGK collision frequency
  double cfl = 0.45;
  double t_end = 0.0;
  double q = 1.0;
  double m = 1.0;
  double eps0 = 1.0;

  double length() const;
  ChargeParams charge() const { return {q, m, eps0, 1.0}; }
  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

struct TraceRow
{
  double t = 0.0;
  double E_h = 0.0;      ///< electric energy sum_j dx E_j^2
  double E_p = 0.0;      ///< particle energy dx sum_j (rho u^2 + D rho theta)
  double E_total = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
};

struct EnergyTrace
{
  std::vector<TraceRow> rows;
};

/// Raised by the watchdog when the state turns non-finite or loses positivity.
class SimulationAborted : public std::runtime_error
{
 public:
  SimulationAborted(const std::string& what, std::size_t step, std::ptrdiff_t cell)
      : std::runtime_error(what)
      , step_(step)
      , cell_(cell)
  {
  }
  std::size_t step() const { return step_; }
  std::ptrdiff_t cell() const { return cell_; }

 private:
  std::size_t step_;
  std::ptrdiff_t cell_;
};

/// Cell densities 1 + A cos(k x_j) at cell centres, Maxwellian with u = 0, theta = 1.
GridState initialize(const SimConfig& config);

/// dt = cfl dx / max_j (|u_1| + C sqrt(theta_j)), C the greatest zero of He_{M+1}.
double cfl_timestep(const GridState& grid, const SimConfig& config);
double cfl_timestep(const GridState& grid, double cfl, double max_zero);

/// One operator-split step: transport, field solve and acceleration, collisions.
/// `dt_cap` shortens the CFL step (used to land on t_end).
GridState step(const GridState& grid, const SimConfig& config, std::optional<double> dt_cap = std::nullopt);

TraceRow diagnostics(const GridState& grid, std::span<const double> efield);

/// Stateful driver that caches the signal-speed constant and the current field.
class Simulation
{
 public:
  explicit Simulation(const SimConfig& config, Closure closure = Closure::Regularized);

  const SimConfig& config() const { return config_; }
  const GridState& grid() const { return grid_; }
  const FieldState& fields() const { return fields_; }
  std::size_t steps_taken() const { return steps_; }

  /// Advances one step and returns the dt used.
  double advance(std::optional<double> dt_cap = std::nullopt);
  TraceRow diagnostics() const { return hv::diagnostics(grid_, fields_.efield); }

 private:
  void check_state() const;

  SimConfig config_;
  Closure closure_;
  double max_zero_;
  GridState grid_;
  FieldState fields_;
  std::size_t steps_ = 0;
};

struct RunOptions
{
  Closure closure = Closure::Regularized;
  /// Snapshot of the last good state is written here if the watchdog fires.
  std::string dump_path;
};

/// Steps until t_end, recording diagnostics at t = 0 and after every step.
EnergyTrace run(const SimConfig& config, const RunOptions& options = {});

void write_trace_csv(std::ostream& os, const EnergyTrace& trace);
EnergyTrace read_trace_csv(std::istream& is);

/// Flat `key = value` config text; keys are the SimConfig field names.
SimConfig parse_config(std::istream& is);
SimConfig load_config(const std::string& path);
/// Applies one `key=value` override (same keys as the file format).
void set_config_value(SimConfig& config, const std::string& key, const std::string& value);
std::string format_config(const SimConfig& config);

}  // namespace hv
