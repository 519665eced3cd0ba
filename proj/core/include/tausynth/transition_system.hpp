#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tausynth {

// Raised by the file-format parsers.  line is 1-based; 0 means the error is
// not tied to a particular line (e.g. a missing section).
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_ : what_),
        line(line_) {}
};

// A finite deterministic initialized transition system.  States and events
// are kept sorted by name and referenced by dense index everywhere else.
// Edges are sorted by (src, event); determinism makes that key unique.
struct TransitionSystem {
  struct Edge {
    int src;
    int event;
    int dst;
    bool operator==(const Edge&) const = default;
  };

  std::vector<std::string> states;
  std::vector<std::string> events;
  int initial = 0;
  std::vector<Edge> edges;
  std::vector<int> first_edge;  // per state: offset of its out-edges in edges; size |S|+1

  int state_count() const { return static_cast<int>(states.size()); }
  int event_count() const { return static_cast<int>(events.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  // -1 when the name is unknown.
  int state_index(std::string_view name) const;
  int event_index(std::string_view name) const;

  std::optional<int> delta(int state, int event) const;
  bool event_occurs_at(int state, int event) const { return delta(state, event).has_value(); }

  // Rebuilds first_edge from edges (which must already be sorted).
  void reindex();

  bool operator==(const TransitionSystem& o) const {
    return states == o.states && events == o.events && initial == o.initial && edges == o.edges;
  }
};

// Builds and fully validates a TS from names.  Throws std::invalid_argument
// on any invariant violation (determinism, reachability, orphan events, bad
// references).  Used by generators and tests; the file parser reports the
// same conditions as ParseError with line numbers.
TransitionSystem make_ts(const std::vector<std::string>& states,
                         const std::vector<std::string>& events,
                         const std::vector<std::array<std::string, 3>>& arcs,
                         const std::string& initial);

TransitionSystem parse_ts(const std::string& text);
std::string serialize_ts(const TransitionSystem& ts);

struct Violation {
  enum class Kind {
    structure,          // malformed indices / unsorted names
    nondeterministic,   // two edges with the same (src, event)
    unreachable,        // state not reachable from the initial state
    orphan_event,       // event without any edge
  };
  Kind kind;
  std::string message;
};

// Empty result iff all TransitionSystem invariants hold.
std::vector<Violation> validate_ts(const TransitionSystem& ts);

// Identifier rule shared by all file formats: non-empty, characters from
// [A-Za-z0-9_+-] plus the UTF-8 encoding of U+2295 (circled plus).
bool valid_token(std::string_view token);

}  // namespace tausynth
