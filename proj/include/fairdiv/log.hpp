// Copyright 2026 The FairDiv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace fairdiv {

enum class LogLevel { kQuiet = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Verbosity comes from FAIRDIV_LOG: a number 0-3 or one of
// quiet|warn|info|debug. Defaults to warn.
inline LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("FAIRDIV_LOG");
    if (env == nullptr) return LogLevel::kWarn;
    const std::string_view v(env);
    if (v == "0" || v == "quiet") return LogLevel::kQuiet;
    if (v == "2" || v == "info") return LogLevel::kInfo;
    if (v == "3" || v == "debug") return LogLevel::kDebug;
    return LogLevel::kWarn;
  }();
  return level;
}

inline void log(LogLevel level, std::string_view message) {
  if (level == LogLevel::kQuiet || static_cast<int>(level) > static_cast<int>(log_level())) return;
  static constexpr std::string_view kTags[] = {"", "warn", "info", "debug"};
  std::cerr << "[fairdiv " << kTags[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace fairdiv
