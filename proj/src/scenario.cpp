#include "infomarket/scenario.hpp"

namespace infomarket {

const Event& Scenario::event(std::string_view name) const {
  for (const auto& e : events) {
    if (e.name == name) return e.event;
  }
  throw InstanceError("unknown event '" + std::string(name) + "'");
}

std::vector<Event> Scenario::events_named(const std::vector<std::string>& names) const {
  std::vector<Event> out;
  for (const auto& n : names) out.push_back(event(n));
  return out;
}

std::vector<Event> Scenario::all_events() const {
  std::vector<Event> out;
  for (const auto& e : events) out.push_back(e.event);
  return out;
}

SecuritySet Scenario::securities_named(const std::vector<std::string>& names) const {
  std::vector<std::size_t> cols;
  for (const auto& n : names) {
    auto j = securities.find(n);
    if (!j) throw InstanceError("unknown security '" + n + "'");
    cols.push_back(*j);
  }
  return securities.select(cols);
}

bool Scenario::operator==(const Scenario& other) const {
  return states == other.states && prior == other.prior && trader_names == other.trader_names &&
         signals == other.signals && securities == other.securities && events == other.events &&
         scoring == other.scoring;
}

}  // namespace infomarket
