#include "tausynth/transition_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace tausynth {

namespace {

int lookup(const std::vector<std::string>& sorted, std::string_view name) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
  if (it == sorted.end() || *it != name) return -1;
  return static_cast<int>(it - sorted.begin());
}

// BFS from initial; returns number of visited states.
int reachable_count(const TransitionSystem& ts, std::vector<char>* seen_out = nullptr) {
  std::vector<char> seen(ts.state_count(), 0);
  std::vector<int> queue;
  if (ts.initial >= 0 && ts.initial < ts.state_count()) {
    seen[ts.initial] = 1;
    queue.push_back(ts.initial);
  }
  for (size_t q = 0; q < queue.size(); ++q) {
    int s = queue[q];
    for (int e = ts.first_edge[s]; e < ts.first_edge[s + 1]; ++e) {
      int t = ts.edges[e].dst;
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }
  if (seen_out) *seen_out = seen;
  return static_cast<int>(queue.size());
}

}  // namespace

bool valid_token(std::string_view token) {
  if (token.empty()) return false;
  for (size_t i = 0; i < token.size(); ++i) {
    unsigned char c = token[i];
    if (std::isalnum(c) || c == '_' || c == '+' || c == '-') continue;
    // U+2295 encodes as E2 8A 95
    if (c == 0xE2 && i + 2 < token.size() && static_cast<unsigned char>(token[i + 1]) == 0x8A &&
        static_cast<unsigned char>(token[i + 2]) == 0x95) {
      i += 2;
      continue;
    }
    return false;
  }
  return true;
}

int TransitionSystem::state_index(std::string_view name) const { return lookup(states, name); }
int TransitionSystem::event_index(std::string_view name) const { return lookup(events, name); }

std::optional<int> TransitionSystem::delta(int state, int event) const {
  for (int e = first_edge[state]; e < first_edge[state + 1]; ++e) {
    if (edges[e].event == event) return edges[e].dst;
    if (edges[e].event > event) break;
  }
  return std::nullopt;
}

void TransitionSystem::reindex() {
  first_edge.assign(state_count() + 1, 0);
  for (const Edge& e : edges) first_edge[e.src + 1]++;
  for (int s = 0; s < state_count(); ++s) first_edge[s + 1] += first_edge[s];
}

namespace {

struct RawArc {
  std::string src, event, dst;
  int line;
};

TransitionSystem assemble(std::vector<std::string> state_names, std::vector<std::string> event_names,
                          const std::vector<RawArc>& arcs, const std::string& initial_name,
                          bool as_parse) {
  auto fail = [&](int line, const std::string& msg) -> void {
    if (as_parse) throw ParseError(line, msg);
    throw std::invalid_argument(msg);
  };

  TransitionSystem ts;
  ts.states = std::move(state_names);
  ts.events = std::move(event_names);
  std::sort(ts.states.begin(), ts.states.end());
  std::sort(ts.events.begin(), ts.events.end());
  if (ts.states.empty()) fail(0, "transition system needs at least one state");
  if (std::adjacent_find(ts.states.begin(), ts.states.end()) != ts.states.end())
    fail(0, "duplicate state name");
  if (std::adjacent_find(ts.events.begin(), ts.events.end()) != ts.events.end())
    fail(0, "duplicate event name");

  ts.initial = ts.state_index(initial_name);
  if (ts.initial < 0) fail(0, "initial state '" + initial_name + "' is not a declared state");

  for (const RawArc& a : arcs) {
    int s = ts.state_index(a.src);
    int e = ts.event_index(a.event);
    int t = ts.state_index(a.dst);
    if (s < 0) fail(a.line, "arc references unknown state '" + a.src + "'");
    if (e < 0) fail(a.line, "arc references unknown event '" + a.event + "'");
    if (t < 0) fail(a.line, "arc references unknown state '" + a.dst + "'");
    ts.edges.push_back({s, e, t});
  }
  std::sort(ts.edges.begin(), ts.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.src, a.event, a.dst) < std::tie(b.src, b.event, b.dst);
  });
  for (size_t i = 1; i < ts.edges.size(); ++i) {
    if (ts.edges[i].src == ts.edges[i - 1].src && ts.edges[i].event == ts.edges[i - 1].event) {
      fail(0, "nondeterministic: event '" + ts.events[ts.edges[i].event] + "' leaves state '" +
                  ts.states[ts.edges[i].src] + "' twice");
    }
  }
  ts.reindex();

  std::vector<char> seen;
  reachable_count(ts, &seen);
  for (int s = 0; s < ts.state_count(); ++s)
    if (!seen[s]) fail(0, "state '" + ts.states[s] + "' is unreachable from the initial state");

  std::vector<char> used(ts.event_count(), 0);
  for (const auto& e : ts.edges) used[e.event] = 1;
  for (int e = 0; e < ts.event_count(); ++e)
    if (!used[e]) fail(0, "event '" + ts.events[e] + "' does not occur on any edge");

  return ts;
}

}  // namespace

TransitionSystem make_ts(const std::vector<std::string>& states, const std::vector<std::string>& events,
                         const std::vector<std::array<std::string, 3>>& arcs,
                         const std::string& initial) {
  std::vector<RawArc> raw;
  raw.reserve(arcs.size());
  for (const auto& a : arcs) raw.push_back({a[0], a[1], a[2], 0});
  return assemble(states, events, raw, initial, /*as_parse=*/false);
}

TransitionSystem parse_ts(const std::string& text) {
  std::vector<std::string> state_names, event_names;
  std::vector<RawArc> arcs;
  std::string initial_name;
  bool have_initial = false;

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
    for (size_t i = 1; i < tok.size(); ++i)
      if (!valid_token(tok[i])) throw ParseError(lineno, "invalid identifier '" + tok[i] + "'");
    if (kw == "states") {
      state_names.insert(state_names.end(), tok.begin() + 1, tok.end());
    } else if (kw == "events") {
      event_names.insert(event_names.end(), tok.begin() + 1, tok.end());
    } else if (kw == "initial") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: initial <state>");
      if (have_initial) throw ParseError(lineno, "duplicate initial declaration");
      initial_name = tok[1];
      have_initial = true;
    } else if (kw == "arc") {
      if (tok.size() != 4) throw ParseError(lineno, "expected: arc <src> <event> <dst>");
      arcs.push_back({tok[1], tok[2], tok[3], lineno});
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!have_initial) throw ParseError(0, "missing initial declaration");
  if (state_names.empty()) throw ParseError(0, "missing states declaration");
  return assemble(state_names, event_names, arcs, initial_name, /*as_parse=*/true);
}

std::string serialize_ts(const TransitionSystem& ts) {
  std::ostringstream out;
  out << "states";
  for (const auto& s : ts.states) out << ' ' << s;
  out << '\n';
  out << "initial " << ts.states[ts.initial] << '\n';
  out << "events";
  for (const auto& e : ts.events) out << ' ' << e;
  out << '\n';
  for (const auto& e : ts.edges)
    out << "arc " << ts.states[e.src] << ' ' << ts.events[e.event] << ' ' << ts.states[e.dst] << '\n';
  return out.str();
}

std::vector<Violation> validate_ts(const TransitionSystem& ts) {
  std::vector<Violation> out;
  auto add = [&](Violation::Kind k, std::string msg) { out.push_back({k, std::move(msg)}); };

  if (ts.states.empty()) {
    add(Violation::Kind::structure, "no states");
    return out;
  }
  if (!std::is_sorted(ts.states.begin(), ts.states.end()) ||
      std::adjacent_find(ts.states.begin(), ts.states.end()) != ts.states.end())
    add(Violation::Kind::structure, "state names not sorted/unique");
  if (!std::is_sorted(ts.events.begin(), ts.events.end()) ||
      std::adjacent_find(ts.events.begin(), ts.events.end()) != ts.events.end())
    add(Violation::Kind::structure, "event names not sorted/unique");
  if (ts.initial < 0 || ts.initial >= ts.state_count())
    add(Violation::Kind::structure, "initial state index out of range");
  if (ts.first_edge.size() != static_cast<size_t>(ts.state_count()) + 1)
    add(Violation::Kind::structure, "edge index out of date");
  for (const auto& e : ts.edges) {
    if (e.src < 0 || e.src >= ts.state_count() || e.dst < 0 || e.dst >= ts.state_count() ||
        e.event < 0 || e.event >= ts.event_count()) {
      add(Violation::Kind::structure, "edge references out-of-range index");
      return out;
    }
  }
  auto by_key = [](const TransitionSystem::Edge& a, const TransitionSystem::Edge& b) {
    return std::tie(a.src, a.event, a.dst) < std::tie(b.src, b.event, b.dst);
  };
  if (!std::is_sorted(ts.edges.begin(), ts.edges.end(), by_key))
    add(Violation::Kind::structure, "edges not sorted by (src, event)");
  if (!out.empty()) return out;  // index checks below assume sane structure
  for (int s = 0; s < ts.state_count(); ++s)
    for (int e = ts.first_edge[s]; e < ts.first_edge[s + 1]; ++e)
      if (ts.edges[e].src != s) {
        add(Violation::Kind::structure, "edge index out of date");
        return out;
      }

  std::map<std::pair<int, int>, int> seen;
  for (const auto& e : ts.edges) {
    auto [it, fresh] = seen.emplace(std::make_pair(e.src, e.event), e.dst);
    if (!fresh && it->second != e.dst)
      add(Violation::Kind::nondeterministic,
          "event '" + ts.events[e.event] + "' is nondeterministic at state '" + ts.states[e.src] + "'");
  }

  std::vector<char> reach;
  reachable_count(ts, &reach);
  for (int s = 0; s < ts.state_count(); ++s)
    if (!reach[s])
      add(Violation::Kind::unreachable, "state '" + ts.states[s] + "' is unreachable");

  std::vector<char> used(ts.event_count(), 0);
  for (const auto& e : ts.edges) used[e.event] = 1;
  for (int e = 0; e < ts.event_count(); ++e)
    if (!used[e]) add(Violation::Kind::orphan_event, "event '" + ts.events[e] + "' never occurs");

  return out;
}

}  // namespace tausynth
