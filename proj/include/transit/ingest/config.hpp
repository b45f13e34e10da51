#pragma once

#include <cstdint>

#include "transit/time.hpp"

namespace transit::ingest {

struct IngestConfig {
  double walking_speed = 1.25;  // m/s, i.e. 4.5 km/h
  double footpath_radius = 500.0;  // meters
  Duration closure_threshold{240};
  bool collapse_parallel_edges = true;

  /// Throws IngestError naming the offending field.
  void check() const;
};

struct SyntheticSpec {
  std::uint32_t stop_count = 20;
  std::uint32_t route_count = 5;
  std::uint32_t trips_per_route = 10;
  double target_density = 0.1;
  std::uint64_t seed = 42;

  /// Throws GenerationError when counts are zero, the density is outside [0,1],
  /// or the instance is infeasible.
  void check() const;
};

}  // namespace transit::ingest
