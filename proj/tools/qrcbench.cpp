// qrcbench: bounds, checks and simulations for quantum reservoir classes.

#include "qrc/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Args {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string log_base;
  bool override_guards = false;
};

void add_common(CLI::App* sub, Args& args) {
  sub->add_option("--config", args.config, "JSON experiment file")->required();
  sub->add_option("--out", args.out, "output directory (overrides output.dir)");
  sub->add_option("--seed", args.seed, "master seed (overrides run.seed)");
  sub->add_option("--log-base", args.log_base, "logarithm base for the bound: e, 2 or 10")
      ->check(CLI::IsMember({"e", "2", "10"}));
  sub->add_flag("--override-guards", args.override_guards, "run verify/simulate above the size guards");
}

}  // namespace

int main(int argc, char** argv) {
  using qrc::cli::kExitConfigError;

  CLI::App app{"Quantum reservoir computing simulator and bound workbench", "qrcbench"};
  app.set_version_flag("--version", qrc::cli::kToolVersion);
  app.require_subcommand(1);

  Args args;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"bound", "evaluate the risk bound and its constants"},
      {"verify", "numerically check the channel and readout hypotheses"},
      {"simulate", "fit a readout and compare the generalisation gap with the bound"},
      {"rademacher", "Monte-Carlo Rademacher complexity against its bound"},
      {"sweep", "tabulate bounds along one parameter axis"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  nlohmann::json config;
  {
    std::ifstream in(args.config);
    if (!in) {
      std::cerr << "error: cannot read " << args.config << "\n";
      return kExitConfigError;
    }
    try {
      config = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
      std::cerr << "error: " << args.config << ": " << err.what() << "\n";
      return kExitConfigError;
    }
  }

  qrc::cli::RunOptions options;
  if (!args.out.empty()) options.out_dir = args.out;
  options.seed = args.seed;
  if (!args.log_base.empty()) options.log_base = qrc::parse_log_base(args.log_base);
  options.override_guards = args.override_guards;

  try {
    return qrc::cli::run_command(command, std::move(config), options, std::cerr);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 70;
  }
}
