#include "boxkernel/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace boxkernel::log {

namespace {

Level from_env() {
  const char* raw = std::getenv("BOXKERNEL_LOG");
  if (!raw) return Level::warn;
  const std::string v(raw);
  if (v == "quiet" || v == "0") return Level::quiet;
  if (v == "error" || v == "1") return Level::error;
  if (v == "warn" || v == "2") return Level::warn;
  if (v == "info" || v == "3") return Level::info;
  if (v == "debug" || v == "4") return Level::debug;
  return Level::warn;
}

std::atomic<int>& current() {
  static std::atomic<int> lvl{static_cast<int>(from_env())};
  return lvl;
}

void emit(Level at, const char* tag, std::string_view msg) {
  if (static_cast<int>(at) > current().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[boxkernel " << tag << "] " << msg << '\n';
}

}  // namespace

Level level() { return static_cast<Level>(current().load()); }
void set_level(Level l) { current().store(static_cast<int>(l)); }

void error(std::string_view msg) { emit(Level::error, "error", msg); }
void warn(std::string_view msg) { emit(Level::warn, "warn", msg); }
void info(std::string_view msg) { emit(Level::info, "info", msg); }
void debug(std::string_view msg) { emit(Level::debug, "debug", msg); }

}  // namespace boxkernel::log
