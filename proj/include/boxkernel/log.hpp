#pragma once

#include <string_view>

namespace boxkernel::log {

enum class Level { quiet = 0, error = 1, warn = 2, info = 3, debug = 4 };

/// Verbosity from BOXKERNEL_LOG (quiet|error|warn|info|debug); default warn.
Level level();
void set_level(Level level);

void error(std::string_view msg);
void warn(std::string_view msg);
void info(std::string_view msg);
void debug(std::string_view msg);

}  // namespace boxkernel::log
