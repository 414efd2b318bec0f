// trionsim <command> --config <path> [--out <path>] [--preset qd1|qd2] [--threads N]
//
// Exit codes: 0 success, 2 invalid configuration or usage, 3 numerical
// failure, 4 I/O failure. TRIONSIM_THREADS sets the thread count when
// --threads is absent.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "trionsim/cli/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = trionsim::cli;
  CLI::App app{"Two-laser trion Lambda-system simulator", "trionsim"};
  app.set_version_flag("--version", std::string("trionsim ") + TRIONSIM_VERSION);
  app.require_subcommand(1);

  cli::RunOptions options;
  unsigned threads = 0;
  for (const auto name : cli::command_names()) {
    auto* sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", options.config_path, "YAML run configuration")->required();
    if (name != "validate") {
      sub->add_option("--out", options.out_path, "CSV output path (default: config 'output', else stdout)");
      sub->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    }
    sub->add_option("--preset", options.preset, "parameter preset")->check(CLI::IsMember({"qd1", "qd2"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kConfigInvalid;
  }

  if (threads == 0) {
    threads = 1;
    if (const char* env = std::getenv("TRIONSIM_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v < 1) throw std::out_of_range("threads");
        threads = static_cast<unsigned>(v);
      } catch (const std::exception&) {
        std::cerr << "error: TRIONSIM_THREADS must be a positive integer\n";
        return cli::kConfigInvalid;
      }
    }
  }
  options.threads = threads;
  const auto* sub = app.get_subcommands().front();
  return cli::run(sub->get_name(), options, std::cout, std::cerr);
}
