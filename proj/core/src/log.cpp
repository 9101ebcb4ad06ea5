#include "antsyn/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

#include "antsyn/text.hpp"

namespace antsyn::log {
namespace {

Level level_from_env() {
  const char* env = std::getenv("ANTSYN_LOG");
  if (env == nullptr) return Level::Warn;
  const std::string value = text::lowercase(env);
  if (value == "error") return Level::Error;
  if (value == "info") return Level::Info;
  if (value == "debug") return Level::Debug;
  return Level::Warn;
}

std::atomic<int>& current() {
  static std::atomic<int> value{static_cast<int>(level_from_env())};
  return value;
}

constexpr std::string_view kNames[] = {"error", "warn", "info", "debug"};

}  // namespace

Level level() { return static_cast<Level>(current().load()); }

void set_level(Level level) { current().store(static_cast<int>(level)); }

void write(Level level, std::string_view message) {
  if (static_cast<int>(level) > current().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[antsyn " << kNames[static_cast<int>(level)] << "] " << message
            << '\n';
}

}  // namespace antsyn::log
