#include "arnav/log.hpp"

#include <cstdlib>
#include <iostream>

namespace arnav {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("ARNAV_LOG");
        if (!env) return LogLevel::warn;
        const std::string v(env);
        if (v == "quiet") return LogLevel::quiet;
        if (v == "info") return LogLevel::info;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

namespace {
void emit(LogLevel at, const char* tag, const std::string& msg) {
    if (log_level() >= at) std::cerr << "arnav [" << tag << "] " << msg << "\n";
}
}  // namespace

void log_warn(const std::string& msg) { emit(LogLevel::warn, "warn", msg); }
void log_info(const std::string& msg) { emit(LogLevel::info, "info", msg); }
void log_debug(const std::string& msg) { emit(LogLevel::debug, "debug", msg); }

}  // namespace arnav
