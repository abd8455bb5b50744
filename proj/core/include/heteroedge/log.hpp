#pragma once

#include <sstream>
#include <string>

namespace heteroedge {

enum class LogLevel { DEBUG = 0, INFO = 1, WARN = 2, ERROR = 3, OFF = 4 };

// Level comes from the HETEROEDGE_LOG environment variable
// (debug|info|warn|error|off), read once; default is warn.
LogLevel log_level();
void set_log_level(LogLevel level);
void log_message(LogLevel level, const std::string& msg);

namespace detail {
inline void append(std::ostringstream&) {}
template <typename T, typename... Rest>
void append(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  append(os, rest...);
}
}  // namespace detail

template <typename... Args>
void log(LogLevel level, const Args&... args) {
  if (level < log_level()) return;
  std::ostringstream os;
  detail::append(os, args...);
  log_message(level, os.str());
}

#define HETEROEDGE_LOG_DEBUG(...) ::heteroedge::log(::heteroedge::LogLevel::DEBUG, __VA_ARGS__)
#define HETEROEDGE_LOG_INFO(...) ::heteroedge::log(::heteroedge::LogLevel::INFO, __VA_ARGS__)
#define HETEROEDGE_LOG_WARN(...) ::heteroedge::log(::heteroedge::LogLevel::WARN, __VA_ARGS__)
#define HETEROEDGE_LOG_ERROR(...) ::heteroedge::log(::heteroedge::LogLevel::ERROR, __VA_ARGS__)

}  // namespace heteroedge
