#pragma once

#include <string>

namespace arnav {

enum class LogLevel { quiet = 0, warn = 1, info = 2, debug = 3 };

/// Verbosity comes from the ARNAV_LOG environment variable
/// (quiet|warn|info|debug, default warn). Logging never changes behavior.
LogLevel log_level();

void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace arnav
