#pragma once

#include <spdlog/logger.h>

namespace transit {

/// Shared stderr logger. Level comes from TRANSIT_PRUNE_LOG
/// (error, warn, info, debug; default warn).
spdlog::logger& log();

}  // namespace transit
