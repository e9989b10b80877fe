#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boxkernel/common.hpp"

namespace boxkernel::cli {

struct Options {
  std::string subcommand;
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;  // overrides the config's output_dir
  bool check_equivalence = false;
  std::optional<double> tol;
};

/// Malformed or semantically invalid configuration.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum ExitCode : int { ok = 0, internal = 1, config_error = 2, numerical_failure = 3 };

const std::vector<std::string>& subcommands();

/// Runs one subcommand. Human-readable progress goes to `out`; failures are
/// reported on `err` as one JSON line {"error": {"code", "kind", "message"}}.
int run(const Options& options, std::ostream& out, std::ostream& err);

}  // namespace boxkernel::cli
