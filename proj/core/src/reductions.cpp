#include "tausynth/reductions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tausynth {

std::optional<Theorem> theorem_from_name(std::string_view name) {
  if (name == "2.1") return Theorem::t21;
  if (name == "2.2") return Theorem::t22;
  if (name == "2.3") return Theorem::t23;
  if (name == "2.4") return Theorem::t24;
  return std::nullopt;
}

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::t21: return "2.1";
    case Theorem::t22: return "2.2";
    case Theorem::t23: return "2.3";
    default: return "2.4";
  }
}

NetType designated_type(Theorem t) {
  switch (t) {
    case Theorem::t21: return NetType{Interaction::nop, Interaction::inp, Interaction::set};
    case Theorem::t22:
      return NetType{Interaction::nop, Interaction::set, Interaction::res, Interaction::free};
    case Theorem::t23:
      return NetType{Interaction::nop, Interaction::set, Interaction::swap, Interaction::used};
    default:
      return NetType{Interaction::nop, Interaction::inp, Interaction::res, Interaction::swap};
  }
}

namespace {

// Accumulates states and arcs; events come into existence through arcs, which
// also rules out orphan events.  Universe elements double as events, so their
// names must be valid identifiers and must not collide with the generated
// event alphabet.
struct GadgetBuilder {
  std::vector<std::string> states;
  std::set<std::string> state_set;
  std::vector<std::array<std::string, 3>> arcs;
  std::set<std::string> generated_events;
  std::set<std::string> element_events;

  const std::string& state(const std::string& name) {
    if (state_set.insert(name).second) states.push_back(name);
    return name;
  }

  void garc(const std::string& src, const std::string& event, const std::string& dst) {
    generated_events.insert(event);
    arcs.push_back({state(src), event, state(dst)});
  }

  void xarc(const std::string& src, const std::string& element, const std::string& dst) {
    if (!valid_token(element))
      throw std::invalid_argument("universe element '" + element + "' is not a valid identifier");
    element_events.insert(element);
    arcs.push_back({state(src), element, state(dst)});
  }

  TransitionSystem finish(const std::string& initial) {
    std::vector<std::string> events;
    for (const auto& e : generated_events) {
      if (element_events.count(e))
        throw std::invalid_argument("universe element '" + e +
                                    "' collides with a generated event name");
      events.push_back(e);
    }
    events.insert(events.end(), element_events.begin(), element_events.end());
    return make_ts(states, events, arcs, initial);
  }
};

std::string bot(int i) { return "bot" + std::to_string(i); }
std::string tst(int i, int j) { return "t" + std::to_string(i) + "_" + std::to_string(j); }
std::string hst(int g, int j) { return "h" + std::to_string(g) + "_" + std::to_string(j); }
std::string wev(int i) { return "w" + std::to_string(i); }
std::string sep(int i) { return "sep" + std::to_string(i); }

SeparationAtom essp_atom(const TransitionSystem& ts, const std::string& event,
                         const std::string& state) {
  SeparationAtom atom{SeparationAtom::Kind::essp, ts.event_index(event), ts.state_index(state)};
  if (atom.first < 0 || atom.second < 0 || ts.event_occurs_at(atom.second, atom.first))
    throw std::logic_error("generator produced a non-atom for alpha");
  return atom;
}

}  // namespace

GadgetOutput build_thm21(const HittingSetInstance& inst) {
  GadgetBuilder b;
  int m = inst.set_count();
  for (int i = 1; i <= m; ++i) {
    const auto& set = inst.family[i - 1];
    b.garc(bot(i), wev(i), tst(i, 0));
    b.garc(tst(i, 0), "k", tst(i, 1));
    int j = 1;
    for (int x : set) {
      b.xarc(tst(i, j), inst.universe[x], tst(i, j + 1));
      ++j;
    }
    b.garc(tst(i, j), "z", tst(i, j + 1));
    b.garc(tst(i, j + 1), "k", tst(i, j + 2));
  }
  for (int i = 1; i <= m; ++i) b.garc(bot(i), sep(i), bot(i + 1));
  b.garc(bot(m + 1), wev(m + 1), "h0");
  b.garc("h0", "k", "h1");
  b.garc("h1", "z", "h2");
  b.garc("h2", "o", "h3");
  b.garc("h3", "k", "h4");

  GadgetOutput out;
  out.theorem = Theorem::t21;
  out.d = inst.kappa + 2;
  out.ts = b.finish(bot(1));
  out.alpha = essp_atom(out.ts, "k", "h2");
  return out;
}

GadgetOutput build_thm22(const HittingSetInstance& inst) {
  GadgetBuilder b;
  int m = inst.set_count();
  // every chain edge is mirrored by a self-loop at its target
  auto chain = [&](const std::string& src, const std::string& event, const std::string& dst) {
    b.garc(src, event, dst);
    b.garc(dst, event, dst);
  };
  for (int i = 1; i <= m; ++i) {
    const auto& set = inst.family[i - 1];
    chain(bot(i), wev(i), tst(i, 0));
    chain(tst(i, 0), "k", tst(i, 1));
    chain(tst(i, 1), "z1", tst(i, 2));
    int j = 2;
    for (int x : set) {
      const std::string& name = inst.universe[x];
      b.xarc(tst(i, j), name, tst(i, j + 1));
      b.xarc(tst(i, j + 1), name, tst(i, j + 1));
      ++j;
    }
    chain(tst(i, j), "z2", tst(i, j + 1));
    chain(tst(i, j + 1), "k", tst(i, j + 2));
  }
  for (int i = 1; i <= m + 2; ++i) {
    b.garc(bot(i), sep(i), bot(i + 1));
    b.garc(bot(i + 1), sep(i), bot(i + 1));
  }
  chain(bot(m + 1), wev(m + 1), hst(1, 0));
  chain(hst(1, 0), "k", hst(1, 1));
  chain(hst(1, 1), "o1", hst(1, 2));
  chain(hst(1, 2), "o2", hst(1, 3));
  chain(hst(1, 3), "k", hst(1, 4));
  chain(bot(m + 2), wev(m + 2), hst(2, 0));
  chain(hst(2, 0), "k", hst(2, 1));
  chain(hst(2, 1), "z1", hst(2, 2));
  b.garc(hst(2, 2), "o1", hst(2, 2));
  chain(bot(m + 3), wev(m + 3), hst(3, 0));
  b.garc(hst(3, 0), "o1", hst(3, 0));
  b.garc(hst(3, 0), "z2", hst(3, 0));

  GadgetOutput out;
  out.theorem = Theorem::t22;
  out.d = inst.kappa + 4;
  out.ts = b.finish(bot(1));
  out.alpha = essp_atom(out.ts, "k", hst(1, 2));
  return out;
}

GadgetOutput build_thm23(const HittingSetInstance& inst) {
  GadgetBuilder b;
  int m = inst.set_count();
  auto bidir = [&](const std::string& a, const std::string& event, const std::string& c) {
    b.garc(a, event, c);
    b.garc(c, event, a);
  };
  for (int i = 1; i <= m; ++i) {
    const auto& set = inst.family[i - 1];
    int mi = static_cast<int>(set.size());
    bidir(bot(i), wev(i), tst(i, 0));
    bidir(tst(i, 0), "k", tst(i, 1));
    bidir(tst(i, 1), "z1", tst(i, 2));
    for (int l = 1; l <= mi; ++l) {
      const std::string& name = inst.universe[set[l - 1]];
      std::string embrace = "a" + std::to_string(i) + "_" + std::to_string(l);
      bidir(tst(i, 4 * l - 2), embrace, tst(i, 4 * l - 1));
      // the lone forward-only edge of the block
      b.xarc(tst(i, 4 * l - 1), name, tst(i, 4 * l));
      b.xarc(tst(i, 4 * l), name, tst(i, 4 * l + 1));
      b.xarc(tst(i, 4 * l + 1), name, tst(i, 4 * l));
      bidir(tst(i, 4 * l + 1), embrace, tst(i, 4 * l + 2));
    }
    bidir(tst(i, 4 * mi + 2), "z2", tst(i, 4 * mi + 3));
    bidir(tst(i, 4 * mi + 3), "k", tst(i, 4 * mi + 4));
  }
  for (int i = 1; i <= m + 1; ++i) bidir(bot(i), sep(i), bot(i + 1));
  bidir(bot(m + 1), wev(m + 1), hst(0, 1));
  bidir(hst(0, 1), "k", hst(0, 2));
  bidir(hst(0, 2), "o1", hst(0, 3));
  bidir(hst(0, 3), "o2", hst(0, 4));
  bidir(hst(0, 4), "k", hst(0, 5));
  bidir(bot(m + 2), wev(m + 2), hst(1, 1));
  bidir(hst(1, 1), "k", hst(1, 2));
  bidir(hst(1, 2), "z1", hst(1, 3));
  bidir(hst(1, 3), "o1", hst(1, 4));
  bidir(hst(1, 4), "z2", hst(1, 5));
  bidir(hst(1, 5), "k", hst(1, 6));

  GadgetOutput out;
  out.theorem = Theorem::t23;
  out.d = inst.kappa + 4;
  out.ts = b.finish(bot(1));
  out.alpha = essp_atom(out.ts, "k", hst(0, 3));
  return out;
}

std::vector<RelevantPath> relevant_paths(const HittingSetInstance& inst) {
  int m = inst.set_count();
  // chain event sets of the cores: k, z3, the set elements, z4
  auto contains_element = [&](int gadget, int element) {
    const auto& set = inst.family[gadget - 1];
    return std::find(set.begin(), set.end(), element) != set.end();
  };
  std::vector<RelevantPath> out;
  for (int i = 1; i <= m; ++i) {
    const auto& set = inst.family[i - 1];
    int mi = static_cast<int>(set.size());
    for (int j = 2; j <= mi + 1; ++j) {
      // position j holds a set element for j <= mi and z4 for j = mi + 1;
      // the predecessor at j - 1 is always a set element
      int pred = set[j - 2];
      int rank = 0;
      for (int g = 1; g <= m; ++g) {
        if (g == i) continue;
        bool has_event = j <= mi ? contains_element(g, set[j - 1]) : true;  // z4 is in every core
        if (has_event && !contains_element(g, pred)) out.push_back({i, j, g, ++rank});
      }
    }
  }
  return out;
}

GadgetOutput build_thm24(const HittingSetInstance& inst) {
  GadgetBuilder b;
  int m = inst.set_count();
  std::vector<RelevantPath> all_paths = relevant_paths(inst);

  for (int g = 1; g <= m; ++g) {
    const auto& set = inst.family[g - 1];
    // the entry path bot_g -w-> P_g -u-> core, pyramid paths first
    std::vector<RelevantPath> paths;
    for (const auto& rp : all_paths)
      if (rp.target_gadget == g) paths.push_back(rp);  // already (i, j)-sorted
    std::string cursor = bot(g);
    std::string entry_event = wev(g);
    if (paths.empty()) {
      std::string rest = "q" + std::to_string(g);
      b.garc(cursor, entry_event, rest);
      cursor = rest;
    } else {
      for (size_t n = 0; n < paths.size(); ++n) {
        const RelevantPath& rp = paths[n];
        std::string tag = std::to_string(rp.source_gadget) + "_" + std::to_string(rp.source_pos);
        auto ps = [&](int l) {
          return "s" + tag + "_" + std::to_string(g) + "_" + std::to_string(l);
        };
        b.garc(cursor, entry_event, ps(0));
        b.garc(ps(0), "v" + tag + "_" + std::to_string(rp.rank), ps(1));
        for (int l = rp.rank; l >= 1; --l)
          b.garc(ps(rp.rank - l + 1), "plus" + tag + "_" + std::to_string(l), ps(rp.rank - l + 2));
        cursor = ps(rp.rank + 1);
        entry_event = "c" + std::to_string(g) + "_" + std::to_string(n + 1);
      }
    }
    b.garc(cursor, "u" + std::to_string(g), tst(g, 0));
    b.garc(tst(g, 0), "k", tst(g, 1));
    b.garc(tst(g, 1), "z3", tst(g, 2));
    int j = 2;
    for (int x : set) {
      b.xarc(tst(g, j), inst.universe[x], tst(g, j + 1));
      ++j;
    }
    b.garc(tst(g, j), "z4", tst(g, j + 1));
    b.garc(tst(g, j + 1), "k", tst(g, j + 2));
  }

  auto hrow = [&](int idx, std::initializer_list<const char*> mids) {
    std::string prev = bot(m + 1 + idx);
    b.garc(prev, wev(m + 1 + idx), hst(idx, 0));
    prev = hst(idx, 0);
    int j = 1;
    for (const char* e : mids) {
      b.garc(prev, e, hst(idx, j));
      prev = hst(idx, j);
      ++j;
    }
  };
  hrow(0, {"k", "o1", "o2", "k"});
  hrow(1, {"k", "z1", "o2", "k"});
  hrow(2, {"k", "z2", "o2", "k"});
  hrow(3, {"k", "z1", "z3", "z2", "k"});
  hrow(4, {"k", "z1", "z4", "z2", "k"});
  for (int i = 1; i <= m + 4; ++i) b.garc(bot(i), sep(i), bot(i + 1));

  GadgetOutput out;
  out.theorem = Theorem::t24;
  out.d = inst.kappa + 4;
  out.ts = b.finish(bot(1));
  out.alpha = essp_atom(out.ts, "k", hst(0, 2));
  return out;
}

GadgetOutput build_gadget(const HittingSetInstance& inst, Theorem t) {
  switch (t) {
    case Theorem::t21: return build_thm21(inst);
    case Theorem::t22: return build_thm22(inst);
    case Theorem::t23: return build_thm23(inst);
    default: return build_thm24(inst);
  }
}

std::string serialize_gadget(const GadgetOutput& gadget) {
  std::ostringstream out;
  out << "# theorem " << theorem_name(gadget.theorem) << " gadget\n";
  out << "# d = " << gadget.d << '\n';
  out << "# alpha = ESSP " << gadget.ts.events[gadget.alpha.first] << ' '
      << gadget.ts.states[gadget.alpha.second] << '\n';
  out << serialize_ts(gadget.ts);
  return out.str();
}

std::vector<std::string> extract_hitting_set(const HittingSetInstance& inst,
                                             const TransitionSystem& gadget_ts,
                                             const Region& region) {
  std::vector<std::string> out;
  for (const auto& name : inst.universe) {
    int e = gadget_ts.event_index(name);
    if (e >= 0 && region.signature[e] != Interaction::nop) out.push_back(name);
  }
  return out;
}

}  // namespace tausynth
