#include "tausynth/verify.hpp"

#include <algorithm>

namespace tausynth {

IsoResult isomorphic(const TransitionSystem& a, const TransitionSystem& b) {
  if (a.events != b.events) return {std::nullopt, "event alphabets differ"};
  if (a.state_count() != b.state_count()) return {std::nullopt, "state counts differ"};
  if (a.edge_count() != b.edge_count()) return {std::nullopt, "edge counts differ"};

  std::vector<int> map(a.state_count(), -1);
  std::vector<char> hit(b.state_count(), 0);
  map[a.initial] = b.initial;
  hit[b.initial] = 1;
  std::vector<int> queue{a.initial};
  for (size_t q = 0; q < queue.size(); ++q) {
    int s = queue[q];
    for (int e = a.first_edge[s]; e < a.first_edge[s + 1]; ++e) {
      const auto& edge = a.edges[e];
      auto t = b.delta(map[s], edge.event);
      if (!t) {
        return {std::nullopt, "event '" + a.events[edge.event] + "' occurs at '" + a.states[s] +
                                  "' but not at its image '" + b.states[map[s]] + "'"};
      }
      if (map[edge.dst] == -1) {
        if (hit[*t])
          return {std::nullopt, "simulation map is not injective at '" + b.states[*t] + "'"};
        map[edge.dst] = *t;
        hit[*t] = 1;
        queue.push_back(edge.dst);
      } else if (map[edge.dst] != *t) {
        return {std::nullopt, "simulation map is inconsistent at '" + a.states[edge.dst] + "'"};
      }
    }
  }
  // a is reachable, so map is total; with |S| and |edges| equal and every
  // a-edge mapped injectively onto a b-edge, the map is an isomorphism.
  return {map, ""};
}

CertificateReport check_certificate(const TransitionSystem& ts, const NetType& type, int d,
                                    const std::vector<Region>& regions) {
  CertificateReport report;
  SpanningTree tree = spanning_tree(ts);

  std::vector<char> usable(regions.size(), 1);
  for (size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    bool valid = r.support.size() == static_cast<size_t>(ts.state_count()) &&
                 r.signature.size() == static_cast<size_t>(ts.event_count());
    if (valid)
      for (Interaction sig : r.signature) valid = valid && type.contains(sig);
    if (valid) {
      auto rebuilt = region_from_seed(ts, type, r.support[ts.initial], r.signature, tree);
      valid = rebuilt.has_value() && *rebuilt == r;
    }
    if (!valid) {
      report.invalid_regions.push_back(static_cast<int>(i));
      usable[i] = 0;
      continue;
    }
    if (restriction_count(r) > d) {
      report.over_budget_regions.push_back(static_cast<int>(i));
      usable[i] = 0;
    }
  }

  for (const SeparationAtom& atom : enumerate_atoms(ts)) {
    bool solved = false;
    for (size_t i = 0; i < regions.size() && !solved; ++i)
      solved = usable[i] && solves(type, regions[i], atom);
    if (!solved) report.unsolved_atoms.push_back(atom);
  }

  std::vector<Region> good;
  for (size_t i = 0; i < regions.size(); ++i)
    if (usable[i]) good.push_back(regions[i]);
  try {
    BooleanNet net = net_from_regions(ts, type, good);
    TransitionSystem rg = reachability_graph(net, ts.state_count() + 1);
    IsoResult iso = isomorphic(ts, rg);
    report.isomorphic = iso.mapping.has_value();
    report.iso_reason = iso.reason;
  } catch (const std::length_error&) {
    report.isomorphic = false;
    report.iso_reason = "reachability graph is larger than the input";
  }

  report.accepted = report.invalid_regions.empty() && report.over_budget_regions.empty() &&
                    report.unsolved_atoms.empty() && report.isomorphic;
  return report;
}

}  // namespace tausynth
