// Command-line front end: experiment presets, generic sweeps, quantizer
// tables and validation, and a built-in selftest. All dB <-> linear
// conversion happens here and in the config parser; the core library works
// in linear units throughout.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "mimoq/config_file.hpp"
#include "mimoq/experiments.hpp"
#include "selftest.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long trials = 0;
  int threads = -1;
};

mimoq::AppConfig load_config(const GlobalArgs& args) {
  mimoq::AppConfig cfg = args.config_path.empty()
                             ? mimoq::default_config()
                             : mimoq::parse_config_file(args.config_path);
  if (args.seed_set) cfg.system.rng_seed = args.seed;
  if (args.trials > 0) cfg.experiment.trials = args.trials;
  if (args.threads >= 0) cfg.experiment.threads = args.threads;
  return cfg;
}

// Output stream selection: --out file or stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink spectral-efficiency simulator for massive MIMO with "
               "low-resolution ADCs over Rician fading"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs args;
  app.add_option("--config", args.config_path, "Config file (INI schema)");
  app.add_option("--out", args.out_path, "Output CSV path (default stdout)");
  auto* seed_opt = app.add_option("--seed", args.seed, "Override the RNG seed");
  app.add_option("--trials", args.trials, "Override the Monte Carlo trial count");
  app.add_option("--threads", args.threads, "Worker threads (0 = hardware)");

  auto* fig1 = app.add_subcommand(
      "fig1", "SE vs antenna count: simulated and closed-form, b in {1,2,inf}");
  auto* fig2 = app.add_subcommand(
      "fig2", "Normalized SE vs Rician K-factor (closed-form)");
  auto* sweep = app.add_subcommand("sweep", "Generic sweep per [experiment] config");
  auto* rho_table = app.add_subcommand("rho-table", "Quantizer distortion table");
  int max_bits = 12;
  rho_table->add_option("--max-bits", max_bits, "Largest bit count")
      ->check(CLI::Range(1, 12));
  auto* validate = app.add_subcommand(
      "validate-aqnm", "Empirical vs model quantizer distortion");
  std::vector<int> validate_bits = {1, 2, 3, 4, 5, 6, 7, 8};
  validate->add_option("--bits", validate_bits, "Bit counts to validate")
      ->delimiter(',');
  long validate_samples = 0;
  validate->add_option("--samples", validate_samples,
                       "Sample count (default from config)");
  auto* selftest = app.add_subcommand("selftest", "Run built-in consistency checks");

  CLI11_PARSE(app, argc, argv);
  args.seed_set = seed_opt->count() > 0;

  try {
    const mimoq::AppConfig cfg = load_config(args);
    OutputTarget out(args.out_path);

    if (fig1->parsed()) {
      mimoq::run_fig1(cfg, out.stream());
    } else if (fig2->parsed()) {
      mimoq::run_fig2(cfg, out.stream());
    } else if (sweep->parsed()) {
      mimoq::run_sweep(cfg, out.stream());
    } else if (rho_table->parsed()) {
      mimoq::run_rho_table(max_bits, out.stream());
    } else if (validate->parsed()) {
      const long samples =
          validate_samples > 0 ? validate_samples : cfg.experiment.aqnm_samples;
      const bool ok = mimoq::run_validate_aqnm(validate_bits, samples,
                                               cfg.system.rng_seed, out.stream());
      if (!ok) {
        std::cerr << "validate-aqnm: empirical distortion deviates from the "
                     "model by 1e-3 or more\n";
        return 1;
      }
    } else if (selftest->parsed()) {
      const int failures = mimoq::tools::run_selftest(out.stream());
      if (failures > 0) {
        std::cerr << "selftest: " << failures << " check(s) failed\n";
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
