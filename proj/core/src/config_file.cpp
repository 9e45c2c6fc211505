#include "mimoq/config_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mimoq {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': " + value);
  }
}

long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for '" + key + "': " + value);
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean value for '" + key + "': " + value);
}

std::vector<double> to_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& item : split_list(value)) out.push_back(to_double(key, item));
  if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
  return out;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void apply_system(AppConfig& cfg, const std::string& key, const std::string& value) {
  SystemConfig& sys = cfg.system;
  if (key == "num_antennas") sys.num_antennas = static_cast<int>(to_long(key, value));
  else if (key == "num_users") sys.num_users = static_cast<int>(to_long(key, value));
  else if (key == "transmit_power_db") sys.transmit_power = db_to_linear(to_double(key, value));
  else if (key == "pilot_length") sys.pilot_length = static_cast<int>(to_long(key, value));
  else if (key == "coherence_interval") sys.coherence_interval = static_cast<int>(to_long(key, value));
  else if (key == "power_scaling") {
    if (value == "fixed") sys.scaling.mode = PowerScalingMode::kFixed;
    else if (value == "scaled") sys.scaling.mode = PowerScalingMode::kScaledByM;
    else throw std::invalid_argument("config: power_scaling must be 'fixed' or 'scaled'");
  }
  else if (key == "alpha") sys.scaling.alpha = to_double(key, value);
  else if (key == "reference_energy_db") sys.scaling.reference_energy = db_to_linear(to_double(key, value));
  else if (key == "rng_seed") sys.rng_seed = static_cast<std::uint64_t>(std::stoull(value));
  else throw std::invalid_argument("config: unknown [system] key '" + key + "'");
}

void apply_geometry(AppConfig& cfg, const std::string& key, const std::string& value) {
  CellGeometry& g = cfg.geometry;
  if (key == "radius_m") g.radius_m = to_double(key, value);
  else if (key == "r_min_m") g.r_min_m = to_double(key, value);
  else if (key == "pathloss_exponent") g.pathloss_exponent = to_double(key, value);
  else if (key == "shadow_std_db") g.shadow_std_db = to_double(key, value);
  else if (key == "d_over_lambda") cfg.d_over_lambda = to_double(key, value);
  else throw std::invalid_argument("config: unknown [geometry] key '" + key + "'");
}

void apply_quantizer(AppConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "adc_bits") cfg.system.adc = parse_adc_resolution(value);
  else if (key == "validation_samples") cfg.experiment.aqnm_samples = to_long(key, value);
  else throw std::invalid_argument("config: unknown [quantizer] key '" + key + "'");
}

void apply_experiment(AppConfig& cfg, const std::string& key, const std::string& value) {
  ExperimentConfig& e = cfg.experiment;
  if (key == "name") e.name = value;
  else if (key == "trials") e.trials = to_long(key, value);
  else if (key == "threads") e.threads = static_cast<int>(to_long(key, value));
  else if (key == "csi") {
    if (value != "perfect" && value != "imperfect" && value != "both")
      throw std::invalid_argument("config: csi must be perfect, imperfect or both");
    e.csi = value;
  }
  else if (key == "k_db") e.k_db = to_double(key, value);
  else if (key == "m_grid") e.m_grid = to_double_list(key, value);
  else if (key == "bits_grid") {
    e.bits_grid = split_list(value);
    for (const std::string& tok : e.bits_grid) parse_adc_resolution(tok);  // validates
    if (e.bits_grid.empty()) throw std::invalid_argument("config: empty bits_grid");
  }
  else if (key == "k_db_grid") e.k_db_grid = to_double_list(key, value);
  else if (key == "alpha_grid") e.alpha_grid = to_double_list(key, value);
  else if (key == "sweep_var") {
    if (value != "M" && value != "bits" && value != "K_db" && value != "alpha")
      throw std::invalid_argument("config: sweep_var must be M, bits, K_db or alpha");
    e.sweep_var = value;
  }
  else if (key == "drop_average") e.drop_average = to_bool(key, value);
  else if (key == "drops") e.drops = static_cast<int>(to_long(key, value));
  else if (key == "normalize_to_ideal") e.normalize_to_ideal = to_bool(key, value);
  else if (key == "validation_samples") e.aqnm_samples = to_long(key, value);
  else throw std::invalid_argument("config: unknown [experiment] key '" + key + "'");
}

}  // namespace

AppConfig default_config() { return AppConfig{}; }

AppConfig parse_config_text(const std::string& text) {
  AppConfig cfg;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "geometry" && section != "quantizer" &&
          section != "experiment")
        throw std::invalid_argument("config: unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section == "system") apply_system(cfg, key, value);
    else if (section == "geometry") apply_geometry(cfg, key, value);
    else if (section == "quantizer") apply_quantizer(cfg, key, value);
    else if (section == "experiment") apply_experiment(cfg, key, value);
    else
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": key outside of any section");
  }
  cfg.system.validate();
  cfg.geometry.validate();
  if (cfg.d_over_lambda <= 0.0)
    throw std::invalid_argument("config: d_over_lambda must be > 0");
  return cfg;
}

AppConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace mimoq
