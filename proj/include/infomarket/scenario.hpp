#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "infomarket/core.hpp"
#include "infomarket/scoring.hpp"

namespace infomarket {

struct NamedEvent {
  std::string name;
  Event event;

  bool operator==(const NamedEvent&) const = default;
};

// A full problem instance: states, common prior, traders' partitions,
// securities, events of interest and the scoring rule.
struct Scenario {
  StateSpace states;
  Distribution prior;
  std::vector<std::string> trader_names;
  SignalStructure signals;
  SecuritySet securities;
  std::vector<NamedEvent> events;
  BrierRule scoring;

  // Throws InstanceError for unknown names.
  const Event& event(std::string_view name) const;
  std::vector<Event> events_named(const std::vector<std::string>& names) const;
  std::vector<Event> all_events() const;
  SecuritySet securities_named(const std::vector<std::string>& names) const;

  bool operator==(const Scenario& other) const;
};

}  // namespace infomarket
