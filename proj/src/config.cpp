#include "hv/simulation.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hv {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text)
{
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("config: bad value '" + text + "' for key '" + key + "'");
  return value;
}

}  // namespace

void set_config_value(SimConfig& config, const std::string& key, const std::string& value)
{
  const std::string v = trim(value);
  if (key == "M") config.M = parse_number<int>(key, v);
  else if (key == "D") config.D = parse_number<int>(key, v);
  else if (key == "N") config.N = parse_number<int>(key, v);
  else if (key == "k") config.k = parse_number<double>(key, v);
  else if (key == "A") config.A = parse_number<double>(key, v);
  else if (key == "nu") config.nu = parse_number<double>(key, v);
  else if (key == "cfl") config.cfl = parse_number<double>(key, v);
  else if (key == "t_end") config.t_end = parse_number<double>(key, v);
  else if (key == "q") config.q = parse_number<double>(key, v);
  else if (key == "m") config.m = parse_number<double>(key, v);
  else if (key == "eps0") config.eps0 = parse_number<double>(key, v);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

SimConfig parse_config(std::istream& is)
{
  SimConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not 'key = value'");
    set_config_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  config.validate();
  return config;
}

SimConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  return parse_config(in);
}

std::string format_config(const SimConfig& c)
{
  std::ostringstream os;
  os.precision(17);
  os << "M = " << c.M << "\nD = " << c.D << "\nN = " << c.N << "\nk = " << c.k << "\nA = " << c.A
     << "\nnu = " << c.nu << "\ncfl = " << c.cfl << "\nt_end = " << c.t_end << "\nq = " << c.q << "\nm = " << c.m
     << "\neps0 = " << c.eps0 << '\n';
  return os.str();
}

}  // namespace hv
