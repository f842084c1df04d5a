#pragma once

#include "hv/simulation.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hv {

/// Raised when a fit has too little data (fewer than 3 peaks or points).
class InsufficientData : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by detect_recurrence when no peak leaves the fitted envelope.
class NoRecurrence : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

struct Peak
{
  double t = 0.0;
  double value = 0.0;
};

struct DampingFit
{
  double gamma = 0.0;      ///< slope of ln(peak) against t
  double intercept = 0.0;  ///< envelope is exp(gamma t + intercept)
  std::vector<Peak> peaks;
  double residual = 0.0;   ///< rms of the log-linear fit
};

struct ExtrapolationFit
{
  double gamma0 = 0.0;  ///< rate at dx -> 0
  double gamma1 = 0.0;  ///< slope in dx
  std::vector<std::pair<double, double>> points;  ///< (dx, gamma)
  double residual = 0.0;
};

struct MomentConvergence
{
  std::vector<std::pair<int, double>> log_differences;  ///< (M_i, ln|gamma_i - gamma_{i-1}|)
  double slope = 0.0;                                    ///< ln(lambda)
  double lambda = 0.0;
};

struct Window
{
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Strict local maxima of sqrt(E_h): v[i-1] < v[i] > v[i+1].
std::vector<Peak> find_peaks(const EnergyTrace& trace);

/// OLS of ln(peak) against t over the peaks inside `window`.
DampingFit fit_damping_rate(const EnergyTrace& trace, Window window);

/// Default window: starts at the first peak and grows one peak at a time,
/// stopping before the first peak that exceeds the running envelope by
/// `threshold` or falls short of it by the same factor. A peak that breaks
/// the monotone trend of the fitted rate ends the window and also removes
/// the peak before it.
DampingFit fit_damping_rate(const EnergyTrace& trace, double threshold = 10.0);

/// Least-squares line gamma = gamma0 + gamma1 dx over >= 3 distinct dx.
ExtrapolationFit extrapolate_rate(const std::vector<std::pair<double, double>>& points);

/// Rates at equally spaced M. Differences must be nonzero and of one sign.
MomentConvergence moment_convergence(const std::vector<std::pair<int, double>>& rates);

/// Times of the consecutive peaks around the first peak that exceeds the
/// fitted envelope by `threshold`.
std::pair<double, double> detect_recurrence(const EnergyTrace& trace, const DampingFit& fit, double threshold = 10.0);

}  // namespace hv
