#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tausynth/interactions.hpp"
#include "tausynth/region.hpp"
#include "tausynth/transition_system.hpp"

namespace tausynth {

using Marking = std::vector<std::uint8_t>;

// A Boolean Petri net of some type: places carry one bit each, the flow
// function assigns an interaction of the type to every (place, transition)
// pair.  Places keep their declared order (the marking vector order);
// transitions are sorted by name.
struct BooleanNet {
  NetType type{Interaction::nop};
  std::vector<std::string> places;
  std::vector<std::string> transitions;
  std::vector<Interaction> flow;  // row-major: flow[p * |T| + t]
  Marking initial_marking;

  int place_count() const { return static_cast<int>(places.size()); }
  int transition_count() const { return static_cast<int>(transitions.size()); }
  Interaction flow_at(int place, int transition) const {
    return flow[place * transitions.size() + transition];
  }
};

bool enabled(const BooleanNet& net, const Marking& marking, int transition);
Marking fire(const BooleanNet& net, const Marking& marking, int transition);

// Breadth-first closure of the initial marking.  States are named by the bit
// string over the place order ("-" for the zero-place net's empty marking).
// max_states > 0 aborts with std::length_error once more markings than that
// have been discovered; 0 means unbounded.
TransitionSystem reachability_graph(const BooleanNet& net, int max_states = 0);

// max over places of the number of transitions with non-nop flow.
int dependency_number(const BooleanNet& net);

// One place per region, named p0, p1, ... in list order; flow from the
// signatures and initial marking from the supports at the initial state.
BooleanNet net_from_regions(const TransitionSystem& ts, const NetType& type,
                            const std::vector<Region>& regions);

BooleanNet parse_net(const std::string& text);
std::string serialize_net(const BooleanNet& net);

}  // namespace tausynth
