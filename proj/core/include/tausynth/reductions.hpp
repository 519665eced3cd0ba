#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tausynth/hitting_set.hpp"
#include "tausynth/interactions.hpp"
#include "tausynth/region.hpp"
#include "tausynth/transition_system.hpp"

namespace tausynth {

// The four gadget constructions, named after the type families they target.
enum class Theorem { t21, t22, t23, t24 };

std::optional<Theorem> theorem_from_name(std::string_view name);  // "2.1" .. "2.4"
std::string_view theorem_name(Theorem t);

// Representative type used when machine-checking the reduction equivalence.
NetType designated_type(Theorem t);

struct GadgetOutput {
  TransitionSystem ts;
  int d = 0;
  SeparationAtom alpha{SeparationAtom::Kind::essp, 0, 0};  // the key ESSP atom
  Theorem theorem = Theorem::t21;
};

GadgetOutput build_thm21(const HittingSetInstance& inst);
GadgetOutput build_thm22(const HittingSetInstance& inst);
GadgetOutput build_thm23(const HittingSetInstance& inst);
GadgetOutput build_thm24(const HittingSetInstance& inst);
GadgetOutput build_gadget(const HittingSetInstance& inst, Theorem t);

// Gadget TS plus "# d = ..." / "# alpha = ESSP <event> <state>" sidecar
// comment lines, parseable by parse_ts.
std::string serialize_gadget(const GadgetOutput& gadget);

// {X in universe | sig(X) != nop}.  Universe elements that occur in no set are
// not events of the gadget and are never extracted.
std::vector<std::string> extract_hitting_set(const HittingSetInstance& inst,
                                             const TransitionSystem& gadget_ts,
                                             const Region& region);

// Bookkeeping of the fourth construction, exposed for tests.  Position j of
// gadget i (j = 2 .. m_i + 1, counting the set elements and then the closing
// z4 event) is relevant for gadget g when the event at j occurs in g's chain
// but its predecessor does not; rank is the 1-based position of g among the
// targets of (i, j), and the relevant path has rank + 2 states.
struct RelevantPath {
  int source_gadget;
  int source_pos;
  int target_gadget;
  int rank;

  int state_count() const { return rank + 2; }
  bool operator==(const RelevantPath&) const = default;
};

std::vector<RelevantPath> relevant_paths(const HittingSetInstance& inst);

}  // namespace tausynth
