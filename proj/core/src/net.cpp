#include "tausynth/net.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tausynth {

namespace {

std::string marking_name(const Marking& m) {
  if (m.empty()) return "-";
  std::string s(m.size(), '0');
  for (size_t i = 0; i < m.size(); ++i) s[i] = m[i] ? '1' : '0';
  return s;
}

}  // namespace

bool enabled(const BooleanNet& net, const Marking& marking, int transition) {
  if (transition < 0 || transition >= net.transition_count())
    throw std::invalid_argument("enabled: unknown transition index");
  for (int p = 0; p < net.place_count(); ++p)
    if (kInteractionTable[static_cast<int>(net.flow_at(p, transition))][marking[p]] < 0) return false;
  return true;
}

Marking fire(const BooleanNet& net, const Marking& marking, int transition) {
  if (!enabled(net, marking, transition))
    throw std::invalid_argument("fire: transition '" + net.transitions[transition] +
                                "' is not enabled");
  Marking next(marking.size());
  for (int p = 0; p < net.place_count(); ++p)
    next[p] = static_cast<std::uint8_t>(
        kInteractionTable[static_cast<int>(net.flow_at(p, transition))][marking[p]]);
  return next;
}

TransitionSystem reachability_graph(const BooleanNet& net, int max_states) {
  std::map<Marking, int> index;
  std::vector<Marking> markings{net.initial_marking};
  index[net.initial_marking] = 0;
  std::vector<std::array<std::string, 3>> arcs;
  for (size_t q = 0; q < markings.size(); ++q) {
    Marking current = markings[q];  // copy: markings may reallocate below
    for (int t = 0; t < net.transition_count(); ++t) {
      if (!enabled(net, current, t)) continue;
      Marking next = fire(net, current, t);
      if (index.emplace(next, static_cast<int>(markings.size())).second) {
        markings.push_back(next);
        if (max_states > 0 && static_cast<int>(markings.size()) > max_states)
          throw std::length_error("reachability graph exceeds " + std::to_string(max_states) +
                                  " states");
      }
      arcs.push_back({marking_name(current), net.transitions[t], marking_name(next)});
    }
  }
  std::vector<std::string> states;
  states.reserve(markings.size());
  for (const auto& m : markings) states.push_back(marking_name(m));
  std::vector<std::string> events;
  for (const auto& arc : arcs)
    if (std::find(events.begin(), events.end(), arc[1]) == events.end()) events.push_back(arc[1]);
  return make_ts(states, events, arcs, marking_name(net.initial_marking));
}

int dependency_number(const BooleanNet& net) {
  int best = 0;
  for (int p = 0; p < net.place_count(); ++p) {
    int dp = 0;
    for (int t = 0; t < net.transition_count(); ++t) dp += (net.flow_at(p, t) != Interaction::nop);
    best = std::max(best, dp);
  }
  return best;
}

BooleanNet net_from_regions(const TransitionSystem& ts, const NetType& type,
                            const std::vector<Region>& regions) {
  BooleanNet net;
  net.type = type;
  net.transitions = ts.events;
  for (size_t i = 0; i < regions.size(); ++i) {
    const Region& r = regions[i];
    if (r.support.size() != static_cast<size_t>(ts.state_count()) ||
        r.signature.size() != static_cast<size_t>(ts.event_count()))
      throw std::invalid_argument("net_from_regions: region does not match the transition system");
    for (Interaction sig : r.signature)
      if (!type.contains(sig))
        throw std::invalid_argument("net_from_regions: region signature outside the type");
    net.places.push_back("p" + std::to_string(i));
    net.flow.insert(net.flow.end(), r.signature.begin(), r.signature.end());
    net.initial_marking.push_back(r.support[ts.initial]);
  }
  return net;
}

BooleanNet parse_net(const std::string& text) {
  std::optional<NetType> type;
  std::vector<std::pair<std::string, int>> places;  // name, initial bit
  std::vector<std::string> transitions;
  struct RawFlow {
    std::string place, transition;
    Interaction interaction;
    int line;
  };
  std::vector<RawFlow> flows;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "type") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: type <interaction,list>");
      if (type) throw ParseError(lineno, "duplicate type declaration");
      type = NetType::parse(tok[1]);
      if (!type) throw ParseError(lineno, "invalid net type '" + tok[1] + "'");
    } else if (kw == "place") {
      if (tok.size() != 4 || tok[2] != "init" || (tok[3] != "0" && tok[3] != "1"))
        throw ParseError(lineno, "expected: place <name> init <0|1>");
      if (!valid_token(tok[1])) throw ParseError(lineno, "invalid identifier '" + tok[1] + "'");
      places.emplace_back(tok[1], tok[3] == "1" ? 1 : 0);
    } else if (kw == "transition") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: transition <name>");
      if (!valid_token(tok[1])) throw ParseError(lineno, "invalid identifier '" + tok[1] + "'");
      transitions.push_back(tok[1]);
    } else if (kw == "flow") {
      if (tok.size() != 4) throw ParseError(lineno, "expected: flow <place> <transition> <interaction>");
      auto i = interaction_from_name(tok[3]);
      if (!i) throw ParseError(lineno, "unknown interaction '" + tok[3] + "'");
      flows.push_back({tok[1], tok[2], *i, lineno});
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!type) throw ParseError(0, "missing type declaration");

  BooleanNet net;
  net.type = *type;
  for (auto& [name, bit] : places) {
    if (std::find(net.places.begin(), net.places.end(), name) != net.places.end())
      throw ParseError(0, "duplicate place '" + name + "'");
    net.places.push_back(name);
    net.initial_marking.push_back(static_cast<std::uint8_t>(bit));
  }
  std::sort(transitions.begin(), transitions.end());
  if (std::adjacent_find(transitions.begin(), transitions.end()) != transitions.end())
    throw ParseError(0, "duplicate transition");
  net.transitions = std::move(transitions);
  net.flow.assign(static_cast<size_t>(net.place_count()) * net.transition_count(), Interaction::nop);

  std::vector<char> assigned(net.flow.size(), 0);
  for (const RawFlow& f : flows) {
    auto pit = std::find(net.places.begin(), net.places.end(), f.place);
    if (pit == net.places.end()) throw ParseError(f.line, "unknown place '" + f.place + "'");
    auto tit = std::lower_bound(net.transitions.begin(), net.transitions.end(), f.transition);
    if (tit == net.transitions.end() || *tit != f.transition)
      throw ParseError(f.line, "unknown transition '" + f.transition + "'");
    if (!net.type.contains(f.interaction))
      throw ParseError(f.line, "interaction '" + std::string(interaction_name(f.interaction)) +
                                   "' is not in the declared type");
    size_t idx = (pit - net.places.begin()) * net.transitions.size() + (tit - net.transitions.begin());
    if (assigned[idx]) throw ParseError(f.line, "duplicate flow for (" + f.place + ", " + f.transition + ")");
    assigned[idx] = 1;
    net.flow[idx] = f.interaction;
  }
  if (!net.type.contains(Interaction::nop))
    for (size_t i = 0; i < assigned.size(); ++i)
      if (!assigned[i])
        throw ParseError(0, "type without nop requires an explicit flow for every pair");
  return net;
}

std::string serialize_net(const BooleanNet& net) {
  std::ostringstream out;
  out << "type " << net.type.to_string() << '\n';
  for (int p = 0; p < net.place_count(); ++p)
    out << "place " << net.places[p] << " init " << int(net.initial_marking[p]) << '\n';
  for (const auto& t : net.transitions) out << "transition " << t << '\n';
  for (int p = 0; p < net.place_count(); ++p)
    for (int t = 0; t < net.transition_count(); ++t)
      if (net.flow_at(p, t) != Interaction::nop)
        out << "flow " << net.places[p] << ' ' << net.transitions[t] << ' '
            << interaction_name(net.flow_at(p, t)) << '\n';
  return out.str();
}

}  // namespace tausynth
