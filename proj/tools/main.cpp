#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "dww/runner.hpp"
#include "dww/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dww - damped water-wave models on the periodic circle"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "execute one simulation from a config file");
  run->add_option("config", config_path, "key = value run configuration")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  {
    std::string names;
    for (const auto& n : dww::verify::suite_names()) names += (names.empty() ? "" : "|") + n;
    verify->add_option("suite", suite, names)->required();
  }

  std::string glob_pattern;
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "execute every config matching a glob");
  sweep->add_option("configs", glob_pattern, "config file glob pattern")->required();
  sweep->add_option("-j,--jobs", jobs, "parallel workers (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return dww::run_command(config_path, std::cout, std::cerr);
    if (*sweep) return dww::sweep_command(glob_pattern, jobs, std::cout, std::cerr);
    if (*verify) {
      dww::verify::SuiteReport report;
      try {
        report = dww::verify::run_suite(suite);
      } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\nsuites:";
        for (const auto& n : dww::verify::suite_names()) std::cerr << ' ' << n;
        std::cerr << '\n';
        return dww::kExitValidation;
      }
      dww::verify::print_report(report, std::cout);
      return report.all_pass() ? dww::kExitOk : dww::kExitVerifyFailed;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return dww::kExitValidation;
  }
  return dww::kExitOk;
}
