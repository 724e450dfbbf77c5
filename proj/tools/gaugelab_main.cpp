#include <CLI11.hpp>

#include <iostream>

#include "gaugelab/runner.hpp"
#include "gaugelab/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gaugelab - gauge-function laboratory for configurable field scenarios"};
  app.require_subcommand(1);

  std::string spec_path;
  gaugelab::RunOptions opt;
  int grid_n = 0;
  double tol = 0.0;
  std::string csv_path, report_path;

  CLI::App* run_cmd = app.add_subcommand("run", "run the check suite described by a spec file");
  run_cmd->add_option("specfile", spec_path, "JSON scenario spec")->required();
  run_cmd->add_option("--grid-n", grid_n, "grid resolution per axis");
  run_cmd->add_option("--tol", tol, "residual tolerance");
  run_cmd->add_option("--csv", csv_path, "CSV output path");
  run_cmd->add_option("--report", report_path, "report output path");

  CLI::App* list_cmd = app.add_subcommand("list-scenarios", "list builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (list_cmd->parsed()) {
    for (const auto& info : gaugelab::list_scenarios())
      std::cout << info.name << "\n    params: " << info.params << "\n    " << info.description
                << "\n";
    return 0;
  }

  try {
    gaugelab::ScenarioSpecFile spec = gaugelab::parse_spec_file(spec_path);
    if (grid_n > 0) opt.grid_n = grid_n;
    if (tol > 0.0) opt.tolerance = tol;
    if (!csv_path.empty()) opt.csv_path = csv_path;
    if (!report_path.empty()) opt.report_path = report_path;
    const gaugelab::RunOutcome outcome = gaugelab::run(spec, opt);
    std::cout << outcome.report.to_text();
    if (outcome.exit_code != 0) {
      std::cerr << "failing checks:";
      for (const auto& n : outcome.report.failing_names()) std::cerr << " " << n;
      std::cerr << "\n";
    }
    return outcome.exit_code;
  } catch (const gaugelab::SpecParseError& e) {
    std::cerr << "spec error at line " << e.line << ", column " << e.column << ": " << e.what()
              << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
