#pragma once

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace sr::log {

enum class Level { Off = 0, Info = 1, Debug = 2 };

// Level comes from the SR_LOG environment variable ("info" or "debug").
inline Level level() {
  static Level lvl = [] {
    const char* env = std::getenv("SR_LOG");
    if (!env) return Level::Off;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    return Level::Off;
  }();
  return lvl;
}

inline void debug(const std::string& line) {
  if (level() >= Level::Debug) std::fprintf(stderr, "%s\n", line.c_str());
}

inline void info(const std::string& line) {
  if (level() >= Level::Info) std::fprintf(stderr, "%s\n", line.c_str());
}

}  // namespace sr::log
