#include "hv/simulation.hpp"

#include "hv/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hv {

double SimConfig::length() const { return 2.0 * std::numbers::pi / k; }

void SimConfig::validate() const
{
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (M < 3) fail("M must be >= 3");
  if (D < 1 || D > kMaxDim) fail("D must be 1, 2 or 3");
  if (N < 1) fail("N must be positive");
  if (!(k > 0.0) || !std::isfinite(k)) fail("k must be positive");
  if (!(std::abs(A) < 1.0)) fail("|A| must be < 1 for a positive initial density");
  if (!(nu >= 0.0) || !std::isfinite(nu)) fail("nu must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("cfl must lie in (0, 1]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be positive");
  if (!std::isfinite(q)) fail("q must be finite");
  if (!(m > 0.0) || !std::isfinite(m)) fail("m must be positive");
  if (!(eps0 > 0.0)) fail("eps0 must be positive");
}

GridState initialize(const SimConfig& config)
{
  config.validate();
  GridState grid(index_set(config.M, config.D), static_cast<std::size_t>(config.N), config.length());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CellState& c = grid.cells[j];
    c.coeffs[0] = 1.0 + config.A * std::cos(config.k * grid.cell_center(j));
    c.u = {};
    c.theta = 1.0;
  }
  return grid;
}

double cfl_timestep(const GridState& grid, double cfl, double max_zero)
{
  double speed = 0.0;
  for (const CellState& c : grid.cells) speed = std::max(speed, std::abs(c.u[0]) + max_zero * std::sqrt(c.theta));
  if (!(speed > 0.0) || !std::isfinite(speed))
    throw std::runtime_error("cfl_timestep: degenerate maximal signal speed " + std::to_string(speed));
  return cfl * grid.dx / speed;
}

double cfl_timestep(const GridState& grid, const SimConfig& config)
{
  return cfl_timestep(grid, config.cfl, greatest_zero(config.M + 1));
}

namespace {

GridState split_step(const GridState& grid, const SimConfig& config, double max_zero, Closure closure,
                     std::optional<double> dt_cap, FieldState* fields_out, double* dt_out)
{
  double dt = cfl_timestep(grid, config.cfl, max_zero);
  if (dt_cap) dt = std::min(dt, *dt_cap);
  GridState next = convection_step(grid, dt, max_zero, closure);
  // rho is final after transport: neither acceleration nor collisions touch it.
  FieldState fields = compute_fields(next, config.charge());
  next = acceleration_step(next, fields.efield, dt, config.charge());
  if (config.nu > 0.0) next = bgk_step(next, config.nu, dt);
  next.time = grid.time + dt;
  if (fields_out) *fields_out = std::move(fields);
  if (dt_out) *dt_out = dt;
  return next;
}

}  // namespace

GridState step(const GridState& grid, const SimConfig& config, std::optional<double> dt_cap)
{
  return split_step(grid, config, greatest_zero(config.M + 1), Closure::Regularized, dt_cap, nullptr, nullptr);
}

TraceRow diagnostics(const GridState& grid, std::span<const double> efield)
{
  const int dim = grid.basis->dim();
  TraceRow row;
  row.t = grid.time;
  double eh = 0.0;
  for (double e : efield) eh += e * e;
  row.E_h = grid.dx * eh;
  double ep = 0.0, mass = 0.0, mom = 0.0;
  for (const CellState& c : grid.cells) {
    const double rho = c.coeffs[0];
    double u2 = 0.0;
    for (int d = 0; d < dim; ++d) u2 += c.u[d] * c.u[d];
    ep += rho * u2 + dim * rho * c.theta;
    mass += rho;
    mom += rho * c.u[0];
  }
  row.E_p = grid.dx * ep;
  row.E_total = row.E_h + row.E_p;
  row.mass = grid.dx * mass;
  row.momentum = grid.dx * mom;
  return row;
}

Simulation::Simulation(const SimConfig& config, Closure closure)
    : config_(config)
    , closure_(closure)
    , max_zero_(greatest_zero(config.M + 1))
    , grid_(initialize(config))
    , fields_(compute_fields(grid_, config.charge()))
{
}

double Simulation::advance(std::optional<double> dt_cap)
{
  double dt = 0.0;
  FieldState fields;
  GridState next;
  try {
    next = split_step(grid_, config_, max_zero_, closure_, dt_cap, &fields, &dt);
  } catch (const VacuumError& e) {
    throw SimulationAborted(std::string(e.what()) + " at step " + std::to_string(steps_ + 1), steps_ + 1, e.cell());
  }
  grid_ = std::move(next);
  fields_ = std::move(fields);
  ++steps_;
  check_state();
  return dt;
}

void Simulation::check_state() const
{
  for (std::size_t j = 0; j < grid_.size(); ++j) {
    const CellState& c = grid_.cells[j];
    bool ok = c.coeffs[0] > 0.0 && c.theta > 0.0 && std::isfinite(c.theta) && std::isfinite(c.u[0]);
    for (double f : c.coeffs) ok = ok && std::isfinite(f);
    if (!ok)
      throw SimulationAborted("watchdog: corrupted state in cell " + std::to_string(j) + " at step " +
                                  std::to_string(steps_),
                              steps_, static_cast<std::ptrdiff_t>(j));
  }
}

EnergyTrace run(const SimConfig& config, const RunOptions& options)
{
  Simulation sim(config, options.closure);
  EnergyTrace trace;
  trace.rows.push_back(sim.diagnostics());
  GridState last_good = sim.grid();
  try {
    while (sim.grid().time < config.t_end) {
      const double remaining = config.t_end - sim.grid().time;
      sim.advance(remaining);
      trace.rows.push_back(sim.diagnostics());
      if (!options.dump_path.empty()) last_good = sim.grid();
      // guard against an endless tail of sub-ulp steps
      if (config.t_end - sim.grid().time <= 1e-12 * config.t_end) break;
    }
  } catch (const SimulationAborted&) {
    if (!options.dump_path.empty()) {
      std::ofstream dump(options.dump_path);
      write_snapshot(dump, last_good, true);
    }
    throw;
  }
  return trace;
}

void write_trace_csv(std::ostream& os, const EnergyTrace& trace)
{
  os << "t,E_h,E_p,E_total,mass,momentum\n";
  const auto old = os.precision(17);
  for (const TraceRow& r : trace.rows)
    os << r.t << ',' << r.E_h << ',' << r.E_p << ',' << r.E_total << ',' << r.mass << ',' << r.momentum << '\n';
  os.precision(old);
}

EnergyTrace read_trace_csv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,E_h,E_p,E_total,mass,momentum") throw std::runtime_error("trace: unexpected header '" + line + "'");
  EnergyTrace trace;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    TraceRow r;
    if (!(ss >> r.t >> r.E_h >> r.E_p >> r.E_total >> r.mass >> r.momentum))
      throw std::runtime_error("trace: malformed row at line " + std::to_string(lineno));
    trace.rows.push_back(r);
  }
  return trace;
}

}  // namespace hv
