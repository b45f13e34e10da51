#include "transit/ingest/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::ingest {

void IngestConfig::check() const {
  if (!(walking_speed > 0.0) || !std::isfinite(walking_speed)) {
    throw IngestError(fmt::format("walking_speed must be > 0 (got {})", walking_speed));
  }
  if (!(footpath_radius >= 0.0) || !std::isfinite(footpath_radius)) {
    throw IngestError(fmt::format("footpath_radius must be >= 0 (got {})", footpath_radius));
  }
  if (closure_threshold.seconds() == 0) throw IngestError("closure_threshold must be > 0");
}

void SyntheticSpec::check() const {
  if (stop_count == 0 || route_count == 0 || trips_per_route == 0) {
    throw GenerationError("stop_count, route_count and trips_per_route must be positive");
  }
  if (!(target_density >= 0.0 && target_density <= 1.0)) {
    throw GenerationError(fmt::format("target_density {} outside [0,1]", target_density));
  }
  if (stop_count < 2) {
    throw GenerationError(fmt::format("{} stop(s) cannot host a route of two stops", stop_count));
  }
}

}  // namespace transit::ingest
