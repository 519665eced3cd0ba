#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tausynth/interactions.hpp"
#include "tausynth/transition_system.hpp"

namespace tausynth {

// A region of a transition system: a support bit per state and an interaction
// per event such that every TS edge maps to an edge of the type.  Equality is
// pointwise (support, signature) equality.
struct Region {
  std::vector<std::uint8_t> support;    // per state
  std::vector<Interaction> signature;   // per event

  bool operator==(const Region& o) const {
    return support == o.support && signature == o.signature;
  }
};

struct SeparationAtom {
  enum class Kind : std::uint8_t { ssp, essp };
  Kind kind;
  int first;   // ssp: smaller state index; essp: event index
  int second;  // ssp: larger state index;  essp: state index

  bool operator==(const SeparationAtom&) const = default;
};

std::string atom_to_string(const TransitionSystem& ts, const SeparationAtom& atom);

// Breadth-first spanning tree rooted at the initial state.  parent/parent_event
// are -1 for the initial state; order is the BFS visit order.
struct SpanningTree {
  std::vector<int> parent;
  std::vector<int> parent_event;
  std::vector<int> order;

  int edge_count() const { return static_cast<int>(order.size()) - 1; }
};

SpanningTree spanning_tree(const TransitionSystem& ts);

// Expands a seed (support at the initial state, full signature) into a region
// by propagating supports down the tree, then checks every edge of the TS.
// Absent when propagation hits an undefined step or some edge is inconsistent.
// The signature must be total and all its values members of the type.
std::optional<Region> region_from_seed(const TransitionSystem& ts, const NetType& type,
                                       int sup_initial, const std::vector<Interaction>& signature,
                                       const SpanningTree& tree);

// All SSP atoms (unordered state pairs, (i,j) with i<j in index order) followed
// by all ESSP atoms ((event, state) with the event absent at the state, in
// event-major order).
std::vector<SeparationAtom> enumerate_atoms(const TransitionSystem& ts);

bool solves(const NetType& type, const Region& region, const SeparationAtom& atom);

// Number of events mapped to something other than nop.
int restriction_count(const Region& region);

// Debug/report form: one "sig <event> <interaction>" line per event followed
// by one "sup <state> <bit>" line per state.
std::string serialize_region(const TransitionSystem& ts, const Region& region);

}  // namespace tausynth
