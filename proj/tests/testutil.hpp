#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "tausynth/hitting_set.hpp"
#include "tausynth/net.hpp"
#include "tausynth/region.hpp"
#include "tausynth/transition_system.hpp"

namespace testutil {

using namespace tausynth;

inline NetType tau0() { return NetType{Interaction::nop, Interaction::inp, Interaction::free}; }
inline NetType tau1() {
  return NetType{Interaction::nop, Interaction::swap, Interaction::used, Interaction::set};
}

// two states joined by a in both directions
inline TransitionSystem a1() {
  return make_ts({"s0", "s1"}, {"a"}, {{"s0", "a", "s1"}, {"s1", "a", "s0"}}, "s0");
}

// b up, c down
inline TransitionSystem a2() {
  return make_ts({"r0", "r1"}, {"b", "c"}, {{"r0", "b", "r1"}, {"r1", "c", "r0"}}, "r0");
}

// simple path a b c
inline TransitionSystem a3() {
  return make_ts({"s0", "s1", "s2", "s3"}, {"a", "b", "c"},
                 {{"s0", "a", "s1"}, {"s1", "b", "s2"}, {"s2", "c", "s3"}}, "s0");
}

// two places over {nop,inp,swap}: R1 -inp- a, R2 -swap- a, R2 -inp- b, M0 = (1,0)
inline BooleanNet two_place_net() {
  BooleanNet net;
  net.type = NetType{Interaction::nop, Interaction::inp, Interaction::swap};
  net.places = {"R1", "R2"};
  net.transitions = {"a", "b"};
  net.flow = {Interaction::inp, Interaction::nop, Interaction::swap, Interaction::inp};
  net.initial_marking = {1, 0};
  return net;
}

// one place flipped by a, initially empty
inline BooleanNet swap_loop_net() {
  BooleanNet net;
  net.type = tau1();
  net.places = {"R1"};
  net.transitions = {"a"};
  net.flow = {Interaction::swap};
  net.initial_marking = {0};
  return net;
}

inline HittingSetInstance running_instance(int kappa = 2) {
  return make_hs({"X1", "X2", "X3", "X4"},
                 {{"X1", "X2"}, {"X2", "X3"}, {"X1", "X4"}, {"X1", "X3", "X4"}}, kappa);
}

// Deterministic, reachable, orphan-free random TS.
inline TransitionSystem random_ts(std::mt19937& rng, int max_states = 5, int max_events = 3) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  int n = 1 + pick(max_states);
  int k = n == 1 ? pick(max_events + 1) : 1 + pick(max_events);

  std::vector<std::array<int, 3>> arcs;
  auto taken = [&](int s, int e) {
    for (const auto& a : arcs)
      if (a[0] == s && a[1] == e) return true;
    return false;
  };
  for (int s = 1; s < n; ++s) {
    // parent among earlier states keeps everything reachable
    int tries = 0;
    while (true) {
      int p = pick(s), e = pick(k);
      if (!taken(p, e)) {
        arcs.push_back({p, e, s});
        break;
      }
      if (++tries > 64) {  // all (p, e) pairs taken: give this state a self parent via new slot
        bool placed = false;
        for (int p2 = 0; p2 < s && !placed; ++p2)
          for (int e2 = 0; e2 < k && !placed; ++e2)
            if (!taken(p2, e2)) {
              arcs.push_back({p2, e2, s});
              placed = true;
            }
        if (!placed) arcs.push_back({s - 1, k - 1, s});  // unreachable in practice
        break;
      }
    }
  }
  int extra = pick(2 * n + 1);
  for (int i = 0; i < extra; ++i) {
    if (k == 0) break;
    int s = pick(n), e = pick(k), t = pick(n);
    if (!taken(s, e)) arcs.push_back({s, e, t});
  }
  // cover unused events
  for (int e = 0; e < k; ++e) {
    bool used = false;
    for (const auto& a : arcs) used = used || a[1] == e;
    if (used) continue;
    bool placed = false;
    for (int s = 0; s < n && !placed; ++s)
      if (!taken(s, e)) {
        arcs.push_back({s, e, pick(n)});
        placed = true;
      }
  }
  std::vector<std::string> states, events;
  for (int s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
  std::vector<char> used(k, 0);
  for (const auto& a : arcs) used[a[1]] = 1;
  std::vector<int> event_id(k, -1);
  for (int e = 0; e < k; ++e)
    if (used[e]) {
      event_id[e] = static_cast<int>(events.size());
      events.push_back("e" + std::to_string(e));
    }
  std::vector<std::array<std::string, 3>> named;
  for (const auto& a : arcs)
    named.push_back({states[a[0]], events[event_id[a[1]]], states[a[2]]});
  return make_ts(states, events, named, "s0");
}

// Variant biased towards gadget-like shapes: chains with self-loops and
// bidirectional edge pairs.
inline TransitionSystem random_looped_ts(std::mt19937& rng, int max_states = 6,
                                         int max_events = 4) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  int n = 2 + pick(max_states - 1);
  int k = 1 + pick(max_events);
  std::vector<std::array<int, 3>> arcs;
  auto taken = [&](int s, int e) {
    for (const auto& a : arcs)
      if (a[0] == s && a[1] == e) return true;
    return false;
  };
  for (int s = 1; s < n; ++s) {
    std::vector<std::pair<int, int>> open;
    for (int p = 0; p < s; ++p)
      for (int e = 0; e < k; ++e)
        if (!taken(p, e)) open.emplace_back(p, e);
    if (open.empty()) {  // earlier states saturated; settle for a smaller system
      n = s;
      break;
    }
    auto [p, e] = open[pick(static_cast<int>(open.size()))];
    arcs.push_back({p, e, s});
    int style = pick(3);
    if (style == 0 && !taken(s, e)) arcs.push_back({s, e, s});  // target self-loop
    if (style == 1 && !taken(s, e)) arcs.push_back({s, e, p});  // make it bidirectional
  }
  for (int e = 0; e < k; ++e) {
    bool used = false;
    for (const auto& a : arcs) used = used || a[1] == e;
    if (used) continue;
    for (int s = 0; s < n; ++s)
      if (!taken(s, e)) {
        arcs.push_back({s, e, s});
        break;
      }
  }
  // an event may stay unplaced when every slot is taken; drop it below
  for (size_t i = 0; i < arcs.size();) {
    if (arcs[i][0] >= n || arcs[i][2] >= n)
      arcs.erase(arcs.begin() + i);
    else
      ++i;
  }
  std::vector<std::string> states, events;
  for (int s = 0; s < n; ++s) states.push_back("s" + std::to_string(s));
  std::vector<char> used(k, 0);
  for (const auto& a : arcs) used[a[1]] = 1;
  std::vector<int> event_id(k, -1);
  for (int e = 0; e < k; ++e)
    if (used[e]) {
      event_id[e] = static_cast<int>(events.size());
      events.push_back("e" + std::to_string(e));
    }
  std::vector<std::array<std::string, 3>> named;
  for (const auto& a : arcs)
    named.push_back({states[a[0]], events[event_id[a[1]]], states[a[2]]});
  return make_ts(states, events, named, "s0");
}

// All total (support, signature) assignments filtered by edge consistency and
// the restriction bound; the independent oracle for the seed enumerator.
inline std::vector<Region> brute_force_regions(const TransitionSystem& ts, const NetType& type,
                                               int d) {
  std::vector<Region> out;
  const auto members = type.members();
  int S = ts.state_count(), E = ts.event_count();
  std::vector<int> sig_idx(E, 0);
  while (true) {
    Region r;
    r.signature.resize(E);
    int non_nop = 0;
    for (int e = 0; e < E; ++e) {
      r.signature[e] = members[sig_idx[e]];
      non_nop += (r.signature[e] != Interaction::nop);
    }
    if (non_nop <= d) {
      for (std::uint64_t bits = 0; bits < (1ull << S); ++bits) {
        r.support.resize(S);
        for (int s = 0; s < S; ++s) r.support[s] = (bits >> s) & 1;
        bool ok = true;
        for (const auto& edge : ts.edges) {
          auto v = interaction_apply(r.signature[edge.event], r.support[edge.src]);
          if (!v || *v != r.support[edge.dst]) {
            ok = false;
            break;
          }
        }
        if (ok) out.push_back(r);
      }
    }
    int e = E - 1;
    while (e >= 0 && sig_idx[e] + 1 == static_cast<int>(members.size())) sig_idx[e--] = 0;
    if (e < 0) break;
    sig_idx[e]++;
  }
  return out;
}

inline bool brute_force_solvable(const TransitionSystem& ts, const NetType& type, int d) {
  auto regions = brute_force_regions(ts, type, d);
  for (const auto& atom : enumerate_atoms(ts)) {
    bool hit = false;
    for (const auto& r : regions)
      if (solves(type, r, atom)) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

inline bool region_set_equal(std::vector<Region> a, std::vector<Region> b) {
  auto key = [](const Region& r) { return std::make_pair(r.support, r.signature); };
  auto lt = [&](const Region& x, const Region& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

}  // namespace testutil
