// Command-line front end: run figure presets or config files and write CSV.

#include <iostream>
#include <optional>
#include <string>
#include <system_error>

#include "CLI11.hpp"
#include "djcm/error.hpp"
#include "djcm/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct SimulateArgs {
  std::string preset;
  std::string config;
  std::string out;
  std::optional<int> cutoff;
  std::optional<double> t_max;
  std::optional<int> points;
  unsigned threads = 0;
  bool quiet = false;
};

int simulate(const SimulateArgs& args) {
  djcm::Scenario s = args.config.empty() ? djcm::preset(args.preset) : djcm::load_config(args.config);
  if (args.cutoff) s.cutoff = *args.cutoff;
  if (args.t_max || args.points) {
    s.grid = djcm::TimeGrid(args.t_max.value_or(s.grid.t_max()), args.points.value_or(s.grid.points()));
  }
  s.validate();
  if (!args.quiet) {
    std::cerr << s.describe() << "\n";
    std::cerr << "cutoff in use: " << djcm::resolved_cutoff(s) << "\n";
  }

  djcm::RunOptions options;
  options.measure.threads = args.threads;
  const djcm::ResultTable table = djcm::run(s, options);
  for (const std::string& w : table.warnings) std::cerr << "warning: " << w << "\n";

  if (args.out.empty() || args.out == "-") {
    djcm::emit_csv(table, std::cout);
  } else {
    djcm::write_csv(table, args.out);
    if (!args.quiet) std::cerr << "wrote " << table.rows.size() << " rows to " << args.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double Jaynes-Cummings entanglement simulator"};
  app.require_subcommand(1);

  SimulateArgs args;
  CLI::App* sim = app.add_subcommand("simulate", "Run a preset or a config file and emit CSV");
  auto* preset_opt = sim->add_option("--preset", args.preset, "Figure preset (fig1 ... fig25)");
  auto* config_opt = sim->add_option("--config", args.config, "Flat key = value scenario file");
  preset_opt->excludes(config_opt);
  sim->add_option("--out", args.out, "Output CSV path (default: stdout)");
  sim->add_option("--cutoff", args.cutoff, "Fock cutoff N (levels 0..N-1); default picks one from the fields");
  sim->add_option("--tmax", args.t_max, "Final time in units of 1/g");
  sim->add_option("--points", args.points, "Number of time samples including t=0");
  sim->add_option("--threads", args.threads, "Worker threads for time points (0 = all cores)");
  sim->add_flag("--quiet", args.quiet, "Suppress progress messages on stderr");

  app.add_subcommand("list-presets", "List the figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (app.got_subcommand("list-presets")) {
      for (const std::string& id : djcm::preset_ids()) {
        std::cout << id << "\t" << djcm::preset_summary(id) << "\n";
      }
      return 0;
    }
    if (args.preset.empty() == args.config.empty()) {
      std::cerr << "error: simulate needs exactly one of --preset or --config\n";
      return kExitConfig;
    }
    return simulate(args);
  } catch (const djcm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const djcm::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::system_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  }
}
