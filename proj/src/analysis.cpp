#include "hv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hv {

namespace {

struct Line
{
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (line.intercept + line.slope * x[i]);
    ss += r * r;
  }
  line.rms = std::sqrt(ss / n);
  return line;
}

DampingFit fit_peaks(std::vector<Peak> peaks)
{
  if (peaks.size() < 3)
    throw InsufficientData("fit_damping_rate: insufficient peaks (" + std::to_string(peaks.size()) + " < 3)");
  std::vector<double> t, y;
  for (const Peak& p : peaks) {
    if (!(p.value > 0.0)) throw InsufficientData("fit_damping_rate: nonpositive peak value");
    t.push_back(p.t);
    y.push_back(std::log(p.value));
  }
  const Line line = least_squares(t, y);
  DampingFit fit;
  fit.gamma = line.slope;
  fit.intercept = line.intercept;
  fit.residual = line.rms;
  fit.peaks = std::move(peaks);
  return fit;
}

double envelope(const DampingFit& fit, double t) { return std::exp(fit.gamma * t + fit.intercept); }

}  // namespace

std::vector<Peak> find_peaks(const EnergyTrace& trace)
{
  std::vector<Peak> peaks;
  const auto& rows = trace.rows;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double prev = std::sqrt(rows[i - 1].E_h);
    const double cur = std::sqrt(rows[i].E_h);
    const double next = std::sqrt(rows[i + 1].E_h);
    if (prev < cur && cur > next) peaks.push_back({rows[i].t, cur});
  }
  return peaks;
}

DampingFit fit_damping_rate(const EnergyTrace& trace, Window window)
{
  if (!(window.t_max > window.t_min)) throw std::invalid_argument("fit_damping_rate: empty window");
  std::vector<Peak> inside;
  for (const Peak& p : find_peaks(trace))
    if (p.t >= window.t_min && p.t <= window.t_max) inside.push_back(p);
  return fit_peaks(std::move(inside));
}

DampingFit fit_damping_rate(const EnergyTrace& trace, double threshold)
{
  if (!(threshold > 1.0)) throw std::invalid_argument("fit_damping_rate: threshold must exceed 1");
  const std::vector<Peak> peaks = find_peaks(trace);
  if (peaks.size() < 3)
    throw InsufficientData("fit_damping_rate: insufficient peaks (" + std::to_string(peaks.size()) + " < 3)");
  std::vector<Peak> used(peaks.begin(), peaks.begin() + 3);
  DampingFit fit = fit_peaks(used);
  for (std::size_t i = 3; i < peaks.size(); ++i) {
    // The exponential segment ends at the first peak that leaves the envelope
    // in either direction or turns against the fitted trend.
    const double ratio = peaks[i].value / envelope(fit, peaks[i].t);
    if (ratio > threshold || ratio * threshold < 1.0) break;
    const double change = peaks[i].value - peaks[i - 1].value;
    if (change * fit.gamma <= 0.0 && fit.gamma != 0.0) {
      // the reversal already distorts the maximum before it
      if (used.size() > 3) {
        used.pop_back();
        fit = fit_peaks(used);
      }
      break;
    }
    used.push_back(peaks[i]);
    fit = fit_peaks(used);
  }
  return fit;
}

ExtrapolationFit extrapolate_rate(const std::vector<std::pair<double, double>>& points)
{
  if (points.size() < 3)
    throw InsufficientData("extrapolate_rate: need at least 3 points, got " + std::to_string(points.size()));
  std::vector<double> x, y;
  for (const auto& [dx, g] : points) {
    if (!std::isfinite(dx) || !std::isfinite(g)) throw std::invalid_argument("extrapolate_rate: non-finite point");
    for (double seen : x)
      if (seen == dx) throw std::invalid_argument("extrapolate_rate: duplicate dx " + std::to_string(dx));
    x.push_back(dx);
    y.push_back(g);
  }
  const Line line = least_squares(x, y);
  ExtrapolationFit fit;
  fit.gamma0 = line.intercept;
  fit.gamma1 = line.slope;
  fit.points = points;
  fit.residual = line.rms;
  return fit;
}

MomentConvergence moment_convergence(const std::vector<std::pair<int, double>>& rates)
{
  if (rates.size() < 3)
    throw InsufficientData("moment_convergence: need at least 3 rates, got " + std::to_string(rates.size()));
  const int step = rates[1].first - rates[0].first;
  if (step <= 0) throw std::invalid_argument("moment_convergence: M must increase");
  MomentConvergence out;
  std::vector<double> x, y;
  int sign = 0;
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (rates[i].first - rates[i - 1].first != step)
      throw std::invalid_argument("moment_convergence: M values are not equally spaced");
    const double diff = rates[i].second - rates[i - 1].second;
    if (diff == 0.0 || !std::isfinite(diff))
      throw std::invalid_argument("moment_convergence: zero difference at M = " + std::to_string(rates[i].first));
    const int s = diff > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw std::invalid_argument("moment_convergence: differences change sign at M = " +
                                  std::to_string(rates[i].first));
    sign = s;
    const double ld = std::log(std::abs(diff));
    out.log_differences.emplace_back(rates[i].first, ld);
    x.push_back(rates[i].first);
    y.push_back(ld);
  }
  const Line line = least_squares(x, y);
  out.slope = line.slope;
  out.lambda = std::exp(line.slope);
  return out;
}

std::pair<double, double> detect_recurrence(const EnergyTrace& trace, const DampingFit& fit, double threshold)
{
  if (!(threshold > 1.0)) throw std::invalid_argument("detect_recurrence: threshold must exceed 1");
  if (!std::isfinite(fit.gamma) || fit.peaks.empty()) throw std::invalid_argument("detect_recurrence: invalid fit");
  const std::vector<Peak> peaks = find_peaks(trace);
  const double start = fit.peaks.front().t;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    if (peaks[i].t <= start) continue;
    if (peaks[i].value > threshold * envelope(fit, peaks[i].t)) return {peaks[i - 1].t, peaks[i].t};
  }
  throw NoRecurrence("detect_recurrence: no recurrence in window");
}

}  // namespace hv
