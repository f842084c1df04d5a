#include "hv/cli.hpp"

#include "hv/analysis.hpp"
#include "hv/simulation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace hv {

namespace {

Window parse_window(const std::string& text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--window expects a:b, got '" + text + "'");
  Window w;
  try {
    w.t_min = std::stod(text.substr(0, colon));
    w.t_max = std::stod(text.substr(colon + 1));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--window expects numbers a:b, got '" + text + "'");
  }
  return w;
}

EnergyTrace load_trace(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace " + path);
  return read_trace_csv(in);
}

std::string sig17(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void print_fit(std::ostream& out, const DampingFit& fit)
{
  out << "gamma=" << sig17(fit.gamma) << " peaks=" << fit.peaks.size() << " residual=" << fit.residual << '\n';
}

struct SweepResult
{
  std::string value;
  double dx = 0.0;
  DampingFit fit;
  std::string error;
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Hermite moment Vlasov-Poisson solver and damping-rate analysis"};
  app.require_subcommand(1);

  std::string config_path, out_path, trace_path, window_text, vary_text, dump_path;
  double threshold = 10.0;
  bool extrapolate = false;
  unsigned jobs = 1;

  auto* run_cmd = app.add_subcommand("run", "simulate and write the energy trace CSV");
  run_cmd->add_option("--config", config_path, "config file")->required();
  run_cmd->add_option("--out", out_path, "trace CSV path (stdout if omitted)");
  run_cmd->add_option("--dump", dump_path, "state snapshot written if the run aborts");

  auto* fit_cmd = app.add_subcommand("fit", "damping rate from a trace");
  fit_cmd->add_option("--trace", trace_path, "trace CSV")->required();
  fit_cmd->add_option("--window", window_text, "fit window a:b (default: first peak to recurrence)");
  fit_cmd->add_option("--threshold", threshold, "envelope excess that ends the default window");

  auto* sweep_cmd = app.add_subcommand("sweep", "vary one config key and fit each run");
  sweep_cmd->add_option("--config", config_path, "base config file")->required();
  sweep_cmd->add_option("--vary", vary_text, "key=v1,v2,...")->required();
  sweep_cmd->add_flag("--extrapolate", extrapolate, "fit gamma = gamma0 + gamma1 dx");
  sweep_cmd->add_option("--window", window_text, "fit window a:b");
  sweep_cmd->add_option("--threshold", threshold, "envelope excess that ends the default window");
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  auto* rec_cmd = app.add_subcommand("recurrence", "bracket the onset of recurrence");
  rec_cmd->add_option("--trace", trace_path, "trace CSV")->required();
  rec_cmd->add_option("--window", window_text, "window of the reference fit");
  rec_cmd->add_option("--threshold", threshold, "envelope excess factor");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run_cmd) {
      const SimConfig config = load_config(config_path);
      RunOptions options;
      options.dump_path = dump_path;
      const EnergyTrace trace = run(config, options);
      if (out_path.empty()) {
        write_trace_csv(out, trace);
      } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot write " + out_path);
        write_trace_csv(f, trace);
      }
      return 0;
    }

    auto fit_trace = [&](const EnergyTrace& trace) {
      return window_text.empty() ? fit_damping_rate(trace, threshold)
                                 : fit_damping_rate(trace, parse_window(window_text));
    };

    if (*fit_cmd) {
      print_fit(out, fit_trace(load_trace(trace_path)));
      return 0;
    }

    if (*rec_cmd) {
      const EnergyTrace trace = load_trace(trace_path);
      const DampingFit fit = fit_trace(trace);
      const auto [lo, hi] = detect_recurrence(trace, fit, threshold);
      out << "t_lo=" << sig17(lo) << " t_hi=" << sig17(hi) << " midpoint=" << sig17(0.5 * (lo + hi)) << '\n';
      return 0;
    }

    if (*sweep_cmd) {
      const SimConfig base = load_config(config_path);
      const auto eq = vary_text.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--vary expects key=v1,v2,...");
      const std::string key = vary_text.substr(0, eq);
      std::vector<std::string> values;
      std::stringstream ss(vary_text.substr(eq + 1));
      for (std::string v; std::getline(ss, v, ',');)
        if (!v.empty()) values.push_back(v);
      if (values.empty()) throw std::invalid_argument("--vary has no values");

      std::vector<SimConfig> configs;
      for (const std::string& v : values) {
        SimConfig c = base;
        set_config_value(c, key, v);
        c.validate();
        configs.push_back(c);
      }

      std::vector<SweepResult> results(configs.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i; (i = next++) < configs.size();) {
          SweepResult& r = results[i];
          r.value = values[i];
          r.dx = configs[i].length() / configs[i].N;
          try {
            r.fit = fit_trace(run(configs[i]));
          } catch (const std::exception& e) {
            r.error = e.what();
          }
        }
      };
      const unsigned n_threads = std::min<std::size_t>(jobs, configs.size());
      std::vector<std::thread> pool;
      for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      out << key << ",dx,gamma,peaks,residual\n";
      bool failed = false;
      std::vector<std::pair<double, double>> points;
      for (const SweepResult& r : results) {
        if (!r.error.empty()) {
          err << key << '=' << r.value << ": " << r.error << '\n';
          failed = true;
          continue;
        }
        out << r.value << ',' << sig17(r.dx) << ',' << sig17(r.fit.gamma) << ',' << r.fit.peaks.size() << ','
            << r.fit.residual << '\n';
        points.emplace_back(r.dx, r.fit.gamma);
      }
      if (failed) return 1;
      if (extrapolate) {
        const ExtrapolationFit ex = extrapolate_rate(points);
        out << "gamma0=" << sig17(ex.gamma0) << " gamma1=" << sig17(ex.gamma1) << " residual=" << ex.residual
            << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

int cli_main(int argc, char** argv)
{
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace hv
