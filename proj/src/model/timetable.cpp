#include "transit/timetable.hpp"

namespace transit {

Timetable::Timetable(std::vector<Stop> stops, std::vector<Route> routes, std::vector<Trip> trips,
                     TransferGraph transfer_graph)
    : stops_(std::move(stops)),
      routes_(std::move(routes)),
      trips_(std::move(trips)),
      transfer_graph_(std::move(transfer_graph)),
      routes_by_stop_(stops_.size()) {
  for (std::size_t r = 0; r < routes_.size(); ++r) {
    const auto& seq = routes_[r].stops;
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      if (seq[pos].index() >= stops_.size()) continue;
      routes_by_stop_[seq[pos].index()].push_back(
          {RouteId(static_cast<RouteId::rep>(r)), static_cast<std::uint32_t>(pos)});
    }
  }
}

std::size_t Timetable::stop_event_count() const {
  std::size_t n = 0;
  for (const auto& t : trips_) n += t.events.size();
  return n;
}

Timetable Timetable::with_transfer_graph(TransferGraph graph) const {
  Timetable copy = *this;
  copy.transfer_graph_ = std::move(graph);
  return copy;
}

}  // namespace transit
