#include "transit/journey.hpp"

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit {

namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

const Trip& checked_trip(const Timetable& tt, const TripLeg& leg) {
  if (leg.trip.index() >= tt.trip_count()) throw Error(fmt::format("trip {} out of range", leg.trip.value()));
  const auto& trip = tt.trip(leg.trip);
  if (leg.board_position >= leg.alight_position || leg.alight_position >= trip.events.size()) {
    throw Error(fmt::format("trip {} leg positions {}->{} invalid", leg.trip.value(), leg.board_position,
                            leg.alight_position));
  }
  return trip;
}

}  // namespace

VertexId leg_start(const Timetable& tt, const Leg& leg) {
  return std::visit(overloaded{[&](const TripLeg& l) {
                                 const auto& trip = checked_trip(tt, l);
                                 return to_vertex(tt.route(trip.route).stops[l.board_position]);
                               },
                               [](const TransferLeg& l) { return l.from; }},
                    leg);
}

VertexId leg_end(const Timetable& tt, const Leg& leg) {
  return std::visit(overloaded{[&](const TripLeg& l) {
                                 const auto& trip = checked_trip(tt, l);
                                 return to_vertex(tt.route(trip.route).stops[l.alight_position]);
                               },
                               [](const TransferLeg& l) { return l.to; }},
                    leg);
}

std::vector<LegTiming> replay(const Timetable& tt, const Journey& journey) {
  std::vector<LegTiming> timings;
  timings.reserve(journey.legs.size());
  VertexId at = to_vertex(journey.source);
  Time now = journey.departure;
  for (std::size_t i = 0; i < journey.legs.size(); ++i) {
    const auto& leg = journey.legs[i];
    if (leg_start(tt, leg) != at) {
      throw Error(fmt::format("leg {} starts at vertex {} but the previous leg ended at {}", i,
                              leg_start(tt, leg).value(), at.value()));
    }
    std::visit(overloaded{[&](const TripLeg& l) {
                            const auto& trip = checked_trip(tt, l);
                            const Time dep = trip.events[l.board_position].departure;
                            if (dep < now) {
                              throw Error(fmt::format("leg {} boards trip '{}' at {} before arriving at {}", i,
                                                      trip.id, format_time(dep), format_time(now)));
                            }
                            const Time arr = trip.events[l.alight_position].arrival;
                            timings.push_back({dep, arr});
                            now = arr;
                          },
                          [&](const TransferLeg& l) {
                            const Time end = now + l.duration;
                            timings.push_back({now, end});
                            now = end;
                          }},
               leg);
    at = leg_end(tt, leg);
  }
  if (at != to_vertex(journey.target)) {
    throw Error(fmt::format("journey ends at vertex {} instead of target {}", at.value(), journey.target.value()));
  }
  return timings;
}

Time replay_arrival(const Timetable& tt, const Journey& journey) {
  const auto timings = replay(tt, journey);
  return timings.empty() ? journey.departure : timings.back().end;
}

Journey make_journey(const Timetable& tt, StopId source, StopId target, Time departure, std::vector<Leg> legs) {
  Journey j;
  j.source = source;
  j.target = target;
  j.departure = departure;
  j.legs = std::move(legs);
  for (const auto& leg : j.legs) {
    if (const auto* tl = std::get_if<TransferLeg>(&leg)) {
      j.transfer_duration_total += tl->duration;
    } else {
      ++j.num_trips;
    }
  }
  j.arrival = replay_arrival(tt, j);
  return j;
}

}  // namespace transit
