#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "transit/ids.hpp"
#include "transit/time.hpp"
#include "transit/timetable.hpp"

namespace transit {

struct TripLeg {
  TripId trip;
  std::uint32_t board_position = 0;
  std::uint32_t alight_position = 0;

  friend bool operator==(const TripLeg&, const TripLeg&) = default;
};

struct TransferLeg {
  VertexId from;
  VertexId to;
  Duration duration;

  friend bool operator==(const TransferLeg&, const TransferLeg&) = default;
};

using Leg = std::variant<TripLeg, TransferLeg>;

struct Journey {
  StopId source;
  StopId target;
  std::vector<Leg> legs;
  Time departure;
  Time arrival;
  int num_trips = 0;
  Duration transfer_duration_total;

  friend bool operator==(const Journey&, const Journey&) = default;
};

/// Start and end time of one leg during a forward replay.
struct LegTiming {
  Time start;
  Time end;
};

/// Forward-simulates the legs from `journey.departure`: trip legs wait for the
/// trip's departure at the boarding position, transfer legs add their duration.
/// Throws Error when legs are disconnected, a trip departs before the passenger
/// arrives, or positions are out of range.
std::vector<LegTiming> replay(const Timetable& timetable, const Journey& journey);

/// Arrival time obtained by replay; equals `journey.arrival` for well-formed journeys.
Time replay_arrival(const Timetable& timetable, const Journey& journey);

/// Assembles a journey from legs, deriving arrival, trip count and transfer total.
Journey make_journey(const Timetable& timetable, StopId source, StopId target, Time departure,
                     std::vector<Leg> legs);

VertexId leg_start(const Timetable& timetable, const Leg& leg);
VertexId leg_end(const Timetable& timetable, const Leg& leg);

}  // namespace transit
