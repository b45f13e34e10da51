#include "transit/log.hpp"

#include <cstdlib>
#include <string_view>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace transit {

namespace {

spdlog::level::level_enum level_from_env() {
  const char* raw = std::getenv("TRANSIT_PRUNE_LOG");
  const std::string_view value = raw == nullptr ? "" : raw;
  if (value == "error") return spdlog::level::err;
  if (value == "info") return spdlog::level::info;
  if (value == "debug") return spdlog::level::debug;
  return spdlog::level::warn;
}

}  // namespace

spdlog::logger& log() {
  static const auto logger = [] {
    auto l = std::make_shared<spdlog::logger>("transit", std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_level(level_from_env());
    l->set_pattern("[%l] %v");
    return l;
  }();
  return *logger;
}

}  // namespace transit
