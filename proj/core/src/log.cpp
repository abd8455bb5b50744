#include "heteroedge/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace heteroedge {

namespace {

std::atomic<int> g_level{-1};
std::mutex g_mutex;

LogLevel parse_level(const char* s) {
  const std::string v = s ? s : "";
  if (v == "debug") return LogLevel::DEBUG;
  if (v == "info") return LogLevel::INFO;
  if (v == "warn") return LogLevel::WARN;
  if (v == "error") return LogLevel::ERROR;
  if (v == "off") return LogLevel::OFF;
  return LogLevel::WARN;
}

const char* level_tag(LogLevel l) {
  switch (l) {
    case LogLevel::DEBUG: return "debug";
    case LogLevel::INFO: return "info";
    case LogLevel::WARN: return "warn";
    case LogLevel::ERROR: return "error";
    default: return "?";
  }
}

}  // namespace

LogLevel log_level() {
  int v = g_level.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(parse_level(std::getenv("HETEROEDGE_LOG")));
    g_level.store(v, std::memory_order_relaxed);
  }
  return static_cast<LogLevel>(v);
}

void set_log_level(LogLevel level) {
  g_level.store(static_cast<int>(level), std::memory_order_relaxed);
}

void log_message(LogLevel level, const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << "[heteroedge:" << level_tag(level) << "] " << msg << "\n";
}

}  // namespace heteroedge
