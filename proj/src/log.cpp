#include "semnet/log.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace semnet::log {

namespace {

Level level_from_env() {
  const char* env = std::getenv("SEMNET_LOG");
  if (env == nullptr) return Level::warn;
  if (std::strcmp(env, "error") == 0) return Level::error;
  if (std::strcmp(env, "warn") == 0) return Level::warn;
  if (std::strcmp(env, "info") == 0) return Level::info;
  if (std::strcmp(env, "debug") == 0) return Level::debug;
  std::fprintf(stderr, "[warn] SEMNET_LOG=%s not recognised (error|warn|info|debug), using warn\n", env);
  return Level::warn;
}

std::atomic<int>& level_slot() {
  static std::atomic<int> slot{static_cast<int>(level_from_env())};
  return slot;
}

const char* tag(Level lv) {
  switch (lv) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "?";
}

std::mutex& io_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Level level() { return static_cast<Level>(level_slot().load(std::memory_order_relaxed)); }

void set_level(Level lv) { level_slot().store(static_cast<int>(lv), std::memory_order_relaxed); }

bool enabled(Level lv) { return static_cast<int>(lv) <= static_cast<int>(level()); }

void write(Level lv, const std::string& msg) {
  if (!enabled(lv)) return;
  std::lock_guard<std::mutex> lock(io_mutex());
  std::fprintf(stderr, "[%s] %s\n", tag(lv), msg.c_str());
}

}  // namespace semnet::log
