#pragma once

#include <filesystem>
#include <vector>

#include "transit/ingest/config.hpp"
#include "transit/timetable.hpp"

namespace transit::ingest {

/// Loads the GTFS subset from `directory`.
///
/// Required: stops.txt, trips.txt, stop_times.txt. Optional: routes.txt (ignored
/// beyond presence), transfers.txt. Trips with identical stop sequences form a
/// route; trips that would overtake each other are split into separate routes.
/// Transfer edges come from transfers.txt when present, otherwise from
/// straight-line footpaths within `config.footpath_radius`.
///
/// Throws IngestError naming the file (and line for malformed rows).
Timetable load_gtfs(const std::filesystem::path& directory, const IngestConfig& config);

/// Great-circle distance in meters.
double haversine_meters(double lat1, double lon1, double lat2, double lon2);

/// Bidirectional footpaths between stops within `config.footpath_radius`,
/// duration ceil(distance / walking_speed) seconds (at least 1). Parallel over stops.
TransferGraph footpath_graph(const std::vector<Stop>& stops, const IngestConfig& config);

}  // namespace transit::ingest
