#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "nctorus/experiments.hpp"

namespace {

int env_threads() {
  if (const char* v = std::getenv("NCT_THREADS")) {
    int n = std::atoi(v);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

nct::Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nct::ConfigError("cannot open config file: " + path);
  try {
    return nct::Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw nct::ConfigError(std::string("config parse error: ") + e.what());
  }
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw nct::ConfigError("cannot open output file: " + path);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative-torus geometry experiment runner"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  nct::RunOptions options;
  options.threads = env_threads();
  std::string sweep_param = "N";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    cmd->add_option("--out", out_path, "output path ('-' for stdout)");
    cmd->add_option("--seed", options.seed, "random seed");
    cmd->add_option("--oracle-q", options.oracle_q,
                    "finite-model dimension for positivity certificates");
    cmd->add_option("--max-n", options.max_n,
                    "cap all truncation radii at this value");
    cmd->add_flag("--fail-fast", options.fail_fast,
                  "stop after the first failing experiment");
  };

  CLI::App* run = app.add_subcommand("run", "run experiments, emit a report");
  add_common(run);
  CLI::App* sweep =
      app.add_subcommand("sweep", "convergence table over one parameter");
  add_common(sweep);
  sweep->add_option("--param", sweep_param, "one of N, theta, tol");

  CLI11_PARSE(app, argc, argv);

  try {
    nct::Json config = load_config(config_path);
    if (run->parsed()) {
      nct::Json report = nct::run_experiments(config, options);
      write_output(out_path, report.dump(2) + "\n");
      return nct::report_passed(report) ? 0 : 1;
    }
    std::string csv = nct::sweep_csv(config, sweep_param, options);
    write_output(out_path, csv);
    return 0;
  } catch (const nct::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
