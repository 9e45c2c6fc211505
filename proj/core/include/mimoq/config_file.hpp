#ifndef MIMOQ_CONFIG_FILE_HPP
#define MIMOQ_CONFIG_FILE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mimoq/scenario.hpp"

namespace mimoq {

// Sweep/experiment settings ([experiment] section). Grids hold raw tokens
// so that "inf" bit entries survive; numeric grids are parsed on use.
struct ExperimentConfig {
  std::string name = "default";
  long trials = 10000;
  int threads = 0;  // 0 = hardware concurrency
  std::string csi = "perfect";  // perfect | imperfect | both
  double k_db = 10.0;
  std::vector<double> m_grid = {32, 64, 128, 256, 512};
  std::vector<std::string> bits_grid = {"1", "2", "inf"};
  std::vector<double> k_db_grid = {0, 5, 10, 15, 20, 25, 30};
  std::vector<double> alpha_grid = {0.6, 0.7, 0.8, 0.9, 1.0};
  std::string sweep_var = "M";  // M | bits | K_db | alpha
  bool drop_average = false;    // average the sweep over user drops
  int drops = 10;               // number of drops when drop_average is on
  bool normalize_to_ideal = true;
  long aqnm_samples = 1000000;  // empirical-distortion sample count
};

// Full application configuration: [system], [geometry], [quantizer],
// [experiment] sections of the INI-style config file. Defaults are the
// values above and in the member initializers of the nested structs.
struct AppConfig {
  SystemConfig system;
  CellGeometry geometry;
  double d_over_lambda = 0.5;
  ExperimentConfig experiment;
};

AppConfig default_config();

// Parses the documented key = value schema. Unknown sections or keys and
// malformed values raise std::invalid_argument with the offending line.
AppConfig parse_config_file(const std::string& path);
AppConfig parse_config_text(const std::string& text);

}  // namespace mimoq

#endif
