#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace mil {

enum class LogLevel : int { Off = 0, Info = 1, Trace = 2 };

/// Log level from MILSYNTH_LOG (off|info|trace), read once.
inline LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("MILSYNTH_LOG");
        if (!env) return LogLevel::Off;
        std::string s(env);
        if (s == "info") return LogLevel::Info;
        if (s == "trace") return LogLevel::Trace;
        return LogLevel::Off;
    }();
    return level;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << "[milsynth] " << msg << "\n";
}

inline void log_trace(const std::string& msg) {
    if (log_level() >= LogLevel::Trace) std::cerr << "[milsynth:trace] " << msg << "\n";
}

}  // namespace mil
