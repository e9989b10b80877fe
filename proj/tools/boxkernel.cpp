#include <iostream>

#include <CLI11.hpp>

#include "boxkernel/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = boxkernel::cli;
  CLI::App app{"Box-product kernel algebra experiments on a quadrature grid"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  cli::Options options;
  std::string config, out;
  double tol = 0.0;
  for (const auto& name : cli::subcommands()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides output_dir)");
    sub->add_flag("--check-equivalence", options.check_equivalence,
                  "filter: also run the point-wise implementation and report the deviation");
    sub->add_option("--tol", tol, "tolerance for the subcommand's pass/fail check")->check(CLI::PositiveNumber);
    sub->callback([&options, name] { options.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::ExitCode::config_error;
  }

  options.config = config;
  if (!out.empty()) options.out = out;
  for (CLI::App* sub : app.get_subcommands())
    if (sub->count("--tol")) options.tol = tol;
  return cli::run(options, std::cout, std::cerr);
}
