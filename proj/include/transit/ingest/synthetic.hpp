#pragma once

#include "transit/ingest/config.hpp"
#include "transit/timetable.hpp"

namespace transit::ingest {

/// Deterministic random network for a given spec. Stops are scattered on a
/// square; the transfer graph connects the closest stop pairs (walking time from
/// straight-line distance) until |E| = round(density * n (n-1)). Adjacency
/// lists are shuffled, so the graph is returned with sorted() == false.
Timetable generate_synthetic(const SyntheticSpec& spec);

}  // namespace transit::ingest
