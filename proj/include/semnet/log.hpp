#pragma once

#include <string>

// Minimal stderr logger. Verbosity comes from the SEMNET_LOG environment
// variable (error|warn|info|debug), default warn. Warnings never affect
// process exit codes.
namespace semnet::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level level();
void set_level(Level lv);
bool enabled(Level lv);

void write(Level lv, const std::string& msg);

inline void error(const std::string& msg) { write(Level::error, msg); }
inline void warn(const std::string& msg) { write(Level::warn, msg); }
inline void info(const std::string& msg) { write(Level::info, msg); }
inline void debug(const std::string& msg) { write(Level::debug, msg); }

}  // namespace semnet::log
