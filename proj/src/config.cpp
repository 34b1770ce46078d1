#include "qcka/config.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcka {

namespace {

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& name, int line, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    fail(name, line, "expected a number, got '" + text + "'");
  }
  if (used != text.size()) fail(name, line, "trailing characters in '" + text + "'");
  return value;
}

}  // namespace

SystemParams parse_config(std::istream& in, const std::string& name) {
  SystemParams params;
  std::optional<double> scalar_distance;
  bool saw_distance_list = false;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, line_no, "missing key");
    if (value.empty()) fail(name, line_no, "missing value for '" + key + "'");

    if (key == "n") {
      params.n_participants = static_cast<int>(parse_number(name, line_no, value));
    } else if (key == "lambda") {
      params.lambda = parse_number(name, line_no, value);
    } else if (key == "eta_d") {
      params.detector_efficiency = parse_number(name, line_no, value);
    } else if (key == "alpha_db_km") {
      params.fiber_loss_db_per_km = parse_number(name, line_no, value);
    } else if (key == "distance_km") {
      scalar_distance = parse_number(name, line_no, value);
    } else if (key == "distances_km") {
      params.distances_km.clear();
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(name, line_no, "empty entry in distances_km");
        params.distances_km.push_back(parse_number(name, line_no, item));
      }
      saw_distance_list = true;
    } else if (key == "y0") {
      params.dark_count_yield = parse_number(name, line_no, value);
    } else if (key == "e0") {
      params.background_error = parse_number(name, line_no, value);
    } else if (key == "ed") {
      params.misalignment = parse_number(name, line_no, value);
    } else if (key == "f") {
      params.ec_efficiency = parse_number(name, line_no, value);
    } else if (key == "pz") {
      params.basis_z_prob = parse_number(name, line_no, value);
    } else if (key == "eps_cor") {
      params.eps_cor = parse_number(name, line_no, value);
    } else if (key == "eps_sec") {
      params.eps_sec = parse_number(name, line_no, value);
    } else if (key == "eps_chernoff") {
      params.eps_chernoff = parse_number(name, line_no, value);
    } else if (key == "pulses") {
      params.total_pulses = parse_number(name, line_no, value);
    } else {
      fail(name, line_no, "unknown key '" + key + "'");
    }
  }

  if (scalar_distance && saw_distance_list)
    throw std::runtime_error(name +
                             ": distance_km and distances_km are exclusive");
  if (scalar_distance || !saw_distance_list) {
    const double d = scalar_distance.value_or(
        params.distances_km.empty() ? 50.0 : params.distances_km.front());
    params.distances_km.assign(
        static_cast<std::size_t>(std::max(params.n_participants - 1, 0)), d);
  }
  return params;
}

SystemParams load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config file");
  return parse_config(in, path);
}

}  // namespace qcka
