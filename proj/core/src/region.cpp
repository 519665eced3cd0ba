#include "tausynth/region.hpp"

#include <sstream>
#include <stdexcept>

namespace tausynth {

std::string atom_to_string(const TransitionSystem& ts, const SeparationAtom& atom) {
  if (atom.kind == SeparationAtom::Kind::ssp)
    return "SSP(" + ts.states[atom.first] + ", " + ts.states[atom.second] + ")";
  return "ESSP(" + ts.events[atom.first] + ", " + ts.states[atom.second] + ")";
}

SpanningTree spanning_tree(const TransitionSystem& ts) {
  SpanningTree tree;
  tree.parent.assign(ts.state_count(), -1);
  tree.parent_event.assign(ts.state_count(), -1);
  tree.order.push_back(ts.initial);
  std::vector<char> seen(ts.state_count(), 0);
  seen[ts.initial] = 1;
  // Out-edges are sorted by event index, so the first arrival at a state wins
  // the lexicographically smallest (BFS depth, event) tie.
  for (size_t q = 0; q < tree.order.size(); ++q) {
    int s = tree.order[q];
    for (int e = ts.first_edge[s]; e < ts.first_edge[s + 1]; ++e) {
      int t = ts.edges[e].dst;
      if (seen[t]) continue;
      seen[t] = 1;
      tree.parent[t] = s;
      tree.parent_event[t] = ts.edges[e].event;
      tree.order.push_back(t);
    }
  }
  if (tree.order.size() != static_cast<size_t>(ts.state_count()))
    throw std::invalid_argument("spanning_tree: transition system is not reachable");
  return tree;
}

std::optional<Region> region_from_seed(const TransitionSystem& ts, const NetType& type,
                                       int sup_initial, const std::vector<Interaction>& signature,
                                       const SpanningTree& tree) {
  if (sup_initial != 0 && sup_initial != 1)
    throw std::invalid_argument("region_from_seed: initial support must be a bit");
  if (signature.size() != static_cast<size_t>(ts.event_count()))
    throw std::invalid_argument("region_from_seed: signature is not total");
  for (Interaction i : signature)
    if (!type.contains(i))
      throw std::invalid_argument("region_from_seed: signature value outside the type");

  Region r;
  r.support.assign(ts.state_count(), 0);
  r.signature = signature;
  r.support[ts.initial] = static_cast<std::uint8_t>(sup_initial);
  for (size_t q = 1; q < tree.order.size(); ++q) {
    int s = tree.order[q];
    std::int8_t v = kInteractionTable[static_cast<int>(signature[tree.parent_event[s]])]
                                     [r.support[tree.parent[s]]];
    if (v < 0) return std::nullopt;
    r.support[s] = static_cast<std::uint8_t>(v);
  }
  for (const auto& e : ts.edges) {
    std::int8_t v = kInteractionTable[static_cast<int>(signature[e.event])][r.support[e.src]];
    if (v < 0 || v != static_cast<std::int8_t>(r.support[e.dst])) return std::nullopt;
  }
  return r;
}

std::vector<SeparationAtom> enumerate_atoms(const TransitionSystem& ts) {
  std::vector<SeparationAtom> atoms;
  for (int a = 0; a < ts.state_count(); ++a)
    for (int b = a + 1; b < ts.state_count(); ++b)
      atoms.push_back({SeparationAtom::Kind::ssp, a, b});
  for (int e = 0; e < ts.event_count(); ++e)
    for (int s = 0; s < ts.state_count(); ++s)
      if (!ts.event_occurs_at(s, e)) atoms.push_back({SeparationAtom::Kind::essp, e, s});
  return atoms;
}

bool solves(const NetType& type, const Region& region, const SeparationAtom& atom) {
  if (atom.kind == SeparationAtom::Kind::ssp)
    return region.support[atom.first] != region.support[atom.second];
  return !type.step(region.support[atom.second], region.signature[atom.first]).has_value();
}

int restriction_count(const Region& region) {
  int n = 0;
  for (Interaction i : region.signature) n += (i != Interaction::nop);
  return n;
}

std::string serialize_region(const TransitionSystem& ts, const Region& region) {
  std::ostringstream out;
  for (int e = 0; e < ts.event_count(); ++e)
    out << "sig " << ts.events[e] << ' ' << interaction_name(region.signature[e]) << '\n';
  for (int s = 0; s < ts.state_count(); ++s)
    out << "sup " << ts.states[s] << ' ' << int(region.support[s]) << '\n';
  return out.str();
}

}  // namespace tausynth
