#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "pushback/engine/error.hpp"
#include "pushback/metrics/sample.hpp"
#include "pushback/scenario/config.hpp"
#include "pushback/sim/simulation.hpp"

namespace pushback::cli {

namespace {

struct RunFlags {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<double> duration_s;
  std::string out = "-";
  std::optional<std::string> defense;
  std::optional<std::uint64_t> sample_interval_ms;
  bool print_config = false;
};

void apply_overrides(scenario::ScenarioConfig& config, const RunFlags& flags) {
  if (flags.seed) config.run.seed = *flags.seed;
  if (flags.duration_s) {
    if (!(*flags.duration_s > 0) || *flags.duration_s > 1e9) {
      throw ConfigError("config.semantic", "--duration must be a positive number of seconds");
    }
    config.run.duration = SimTime::nanos(static_cast<std::uint64_t>(std::llround(*flags.duration_s * 1e9)));
  }
  if (flags.defense) config.defense.enabled = *flags.defense == "on";
  if (flags.sample_interval_ms) config.run.sample_interval = SimTime::millis(*flags.sample_interval_ms);
  scenario::validate(config);
}

int execute(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  scenario::ScenarioConfig config = scenario::load_scenario(flags.scenario);
  apply_overrides(config, flags);
  if (flags.print_config) {
    out << scenario::to_json(config) << '\n';
    return 0;
  }

  sim::Simulation simulation(config);
  simulation.run();
  const auto& rows = simulation.metrics().rows();
  const std::string summary = simulation.summary().line();

  if (flags.out == "-") {
    metrics::write_csv(rows, out);
    out.flush();
    err << summary << '\n';
    return 0;
  }
  std::ofstream file(flags.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error[output.io]: cannot open '" << flags.out << "' for writing\n";
    return 2;
  }
  metrics::write_csv(rows, file);
  file.close();
  if (!file) {
    err << "error[output.io]: failed writing '" << flags.out << "'\n";
    return 2;
  }
  out << summary << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-event simulator for a pushback and client-puzzle DDoS defense", "pushback_sim"};
  app.require_subcommand(1);

  RunFlags flags;
  CLI::App* run = app.add_subcommand("run", "Run a scenario and write per-interval metrics as CSV");
  run->add_option("scenario", flags.scenario, "Scenario JSON file")->required();
  run->add_option("--seed", flags.seed, "PRNG seed (overrides the file)");
  run->add_option("--duration", flags.duration_s, "Simulated seconds (overrides the file)");
  run->add_option("--out", flags.out, "CSV destination, '-' for stdout")->capture_default_str();
  run->add_option("--defense", flags.defense, "Enable or disable the defense")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--sample-interval", flags.sample_interval_ms, "Metric sample interval in ms");
  run->add_flag("--print-config", flags.print_config, "Print the effective configuration as JSON and exit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return 1;
  }

  try {
    return execute(flags, out, err);
  } catch (const ConfigError& e) {
    err << "error[" << e.code() << "]: " << e.what() << '\n';
    return 1;
  } catch (const SimulationFault& e) {
    err << "error[runtime.fault]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error[runtime.fault]: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace pushback::cli
