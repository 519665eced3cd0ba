// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure.  Heavier than the unit tests; runs the full reduction sweep.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tausynth/hitting_set.hpp"
#include "tausynth/net.hpp"
#include "tausynth/reductions.hpp"
#include "tausynth/solver.hpp"
#include "tausynth/transition_system.hpp"
#include "tausynth/verify.hpp"

#include "../testutil.hpp"

using namespace tausynth;
using namespace testutil;

namespace {

struct Criterion {
  int number;
  std::string name;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define EXPECT(cond, what)                             \
  do {                                                 \
    if (!(cond)) throw Failure(std::string(what));     \
  } while (0)

// ---- shared corpus ---------------------------------------------------------

std::vector<TransitionSystem> random_corpus(int count) {
  std::mt19937 rng(20240817);
  std::vector<TransitionSystem> out;
  for (int i = 0; i < count; ++i) out.push_back(random_ts(rng, 5, 3));
  return out;
}

const std::vector<NetType>& corpus_types() {
  static const std::vector<NetType> types = {
      tau0(),
      tau1(),
      designated_type(Theorem::t21),
      designated_type(Theorem::t22),
      designated_type(Theorem::t23),
      designated_type(Theorem::t24),
  };
  return types;
}

// Round-trip results collected by criteria 2 and 6, validated by criterion 5.
struct RoundTrip {
  TransitionSystem ts;
  NetType type{Interaction::nop};
  std::vector<Region> admissible;
  std::string label;
};
std::vector<RoundTrip> g_round_trips;
bool g_example2_collected = false;
bool g_reductions_collected = false;

// All instances of the small sweep: distinct non-empty subsets of size <= 2
// over universes of up to three elements, families of up to three sets.
std::vector<HittingSetInstance> sweep_instances() {
  std::vector<HittingSetInstance> out;
  for (int u = 1; u <= 3; ++u) {
    std::vector<std::string> universe;
    for (int i = 1; i <= u; ++i) universe.push_back("X" + std::to_string(i));
    std::vector<std::vector<std::string>> pool;
    for (int a = 0; a < u; ++a) {
      pool.push_back({universe[a]});
      for (int b = a + 1; b < u; ++b) pool.push_back({universe[a], universe[b]});
    }
    int p = static_cast<int>(pool.size());
    for (int mask = 0; mask < (1 << p); ++mask) {
      if (__builtin_popcount(static_cast<unsigned>(mask)) > 3) continue;
      std::vector<std::vector<std::string>> family;
      for (int s = 0; s < p; ++s)
        if (mask & (1 << s)) family.push_back(pool[s]);
      for (int kappa = 0; kappa <= 2; ++kappa) out.push_back(make_hs(universe, family, kappa));
    }
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- criteria --------------------------------------------------------------

void criterion_fig2(std::ostringstream& log) {
  auto start = std::chrono::steady_clock::now();
  auto net = parse_net(
      "type nop,inp,swap\n"
      "place R1 init 1\nplace R2 init 0\n"
      "transition a\ntransition b\n"
      "flow R1 a inp\nflow R2 a swap\nflow R2 b inp\n");
  auto rg = reachability_graph(net);
  EXPECT(rg.states == std::vector<std::string>({"00", "01", "10"}), "marking names");
  EXPECT(rg.initial == rg.state_index("10"), "initial marking");
  EXPECT(rg.edge_count() == 2, "edge count");
  EXPECT(rg.delta(rg.state_index("10"), rg.event_index("a")) == rg.state_index("01"), "a step");
  EXPECT(rg.delta(rg.state_index("01"), rg.event_index("b")) == rg.state_index("00"), "b step");
  EXPECT(enumerate_atoms(rg).size() == 3 + 4, "atom count of the path");
  double dt = seconds_since(start);
  EXPECT(dt < 1.0, "over time budget");
  log << "reachability graph reproduced in " << dt << "s";
}

void criterion_example2(std::ostringstream& log) {
  auto start = std::chrono::steady_clock::now();
  auto ts1 = a1();
  auto ts2 = a2();

  g_example2_collected = true;
  auto solved = synthesize(ts1, tau1(), 1);
  EXPECT(solved.solvable, "loop must be solvable at d=1");
  for (const auto& r : solved.admissible) EXPECT(restriction_count(r) <= 1, "budget");
  auto net = net_from_regions(ts1, tau1(), solved.admissible);
  EXPECT(dependency_number(net) <= 1, "net must be 1-restricted");
  EXPECT(isomorphic(ts1, reachability_graph(net)).mapping.has_value(), "lemma round-trip");
  g_round_trips.push_back({ts1, tau1(), solved.admissible, "example2/a1"});

  auto unsolvable0 = synthesize(ts1, tau0(), ts1.event_count());
  EXPECT(!unsolvable0.solvable, "nop/inp/free cannot separate the loop");
  EXPECT(unsolvable0.unsolved_atoms.size() == 1, "single unsolved atom");
  EXPECT((unsolvable0.unsolved_atoms[0] ==
          SeparationAtom{SeparationAtom::Kind::ssp, ts1.state_index("s0"), ts1.state_index("s1")}),
         "the SSP atom");

  auto unsolvable1 = synthesize(ts2, tau1(), ts2.event_count());
  EXPECT(!unsolvable1.solvable, "cycle must fail");
  EXPECT(unsolvable1.unsolved_atoms.size() == 2, "exactly two unsolved atoms");
  EXPECT((unsolvable1.unsolved_atoms[0] ==
          SeparationAtom{SeparationAtom::Kind::essp, ts2.event_index("b"), ts2.state_index("r1")}),
         "(b, r1)");
  EXPECT((unsolvable1.unsolved_atoms[1] ==
          SeparationAtom{SeparationAtom::Kind::essp, ts2.event_index("c"), ts2.state_index("r0")}),
         "(c, r0)");

  SeparationAtom ssp{SeparationAtom::Kind::ssp, ts2.state_index("r0"), ts2.state_index("r1")};
  EXPECT(solve_single_atom(ts2, tau1(), 2, ssp).has_value(), "separable at d=2");
  bool brute = false;
  for (const auto& r : brute_force_regions(ts2, tau1(), 1)) brute = brute || solves(tau1(), r, ssp);
  EXPECT(solve_single_atom(ts2, tau1(), 1, ssp).has_value() == brute, "d=1 agrees with brute force");

  double dt = seconds_since(start);
  EXPECT(dt < 1.0, "over time budget");
  log << "verdicts and atom lists exact in " << dt << "s";
}

void criterion_example4(std::ostringstream& log) {
  auto ts = a3();
  std::vector<Interaction> sig(ts.event_count(), Interaction::nop);
  sig[ts.event_index("a")] = Interaction::used;
  sig[ts.event_index("b")] = Interaction::swap;
  sig[ts.event_index("c")] = Interaction::set;
  auto region = region_from_seed(ts, tau1(), 1, sig, spanning_tree(ts));
  EXPECT(region.has_value(), "seed must expand");
  const int expected[4] = {1, 1, 0, 1};
  for (int i = 0; i < 4; ++i)
    EXPECT(region->support[ts.state_index("s" + std::to_string(i))] == expected[i], "support bit");
  log << "support (1,1,0,1) reproduced";
}

void criterion_enumerator_oracle(std::ostringstream& log) {
  auto corpus = random_corpus(100);
  std::uint64_t comparisons = 0;
  for (const auto& ts : corpus) {
    for (const auto& type : corpus_types()) {
      for (int d : {0, 1, 2, ts.event_count()}) {
        RegionEnumerator stream(ts, type, d);
        std::vector<Region> got;
        while (auto r = stream.next()) got.push_back(*r);
        EXPECT(region_set_equal(got, brute_force_regions(ts, type, d)), "enumerator mismatch");
        std::uint64_t expected_seeds = RegionEnumerator::seed_count(
            ts.event_count(),
            static_cast<int>(type.non_nop_members().size()), d, true);
        EXPECT(stream.seeds_tried() == expected_seeds, "seed accounting");
        ++comparisons;
      }
    }
  }
  log << comparisons << " enumerator/brute-force comparisons, zero mismatches";
}

void collect_round_trips_if_needed();

void criterion_lemma_round_trip(std::ostringstream& log) {
  collect_round_trips_if_needed();
  EXPECT(!g_round_trips.empty(), "no solvable syntheses to round-trip");
  for (const auto& rt : g_round_trips) {
    auto net = net_from_regions(rt.ts, rt.type, rt.admissible);
    TransitionSystem rg;
    try {
      rg = reachability_graph(net, rt.ts.state_count() + 1);
    } catch (const std::length_error&) {
      throw Failure("state space blow-up for " + rt.label);
    }
    EXPECT(isomorphic(rt.ts, rg).mapping.has_value(), "round-trip failed for " + rt.label);
    int max_count = 0;
    for (const auto& r : rt.admissible) max_count = std::max(max_count, restriction_count(r));
    EXPECT(dependency_number(net) == max_count, "dependency number mismatch for " + rt.label);
  }
  log << g_round_trips.size() << " solvable syntheses round-tripped";
}

struct MismatchTally {
  int cases = 0;
  int verdict_mismatches = 0;
  std::string first_mismatch;
};

void check_reduction_case(const HittingSetInstance& inst, Theorem theorem, double budget_seconds,
                          const std::string& label, MismatchTally& tally) {
  auto start = std::chrono::steady_clock::now();
  auto gadget = build_gadget(inst, theorem);
  EXPECT(validate_ts(gadget.ts).empty(), "gadget must validate: " + label);
  NetType type = designated_type(theorem);
  bool hs_yes = hs_brute_force(inst).has_value();

  SynthesisOptions options;
  options.stop_at_first_unsolved = true;
  options.hint = gadget.alpha;
  auto result = synthesize(gadget.ts, type, gadget.d, options);

  // a region solving the key atom yields a hitting set, unconditionally
  auto alpha_region = solve_single_atom(gadget.ts, type, gadget.d, gadget.alpha);
  if (alpha_region) {
    auto extracted = extract_hitting_set(inst, gadget.ts, *alpha_region);
    EXPECT(static_cast<int>(extracted.size()) <= inst.kappa, "extraction over budget: " + label);
    EXPECT(is_hitting_set(inst, extracted), "extraction is not a hitting set: " + label);
  } else {
    EXPECT(!result.solvable, "solvable overall but the key atom has no region: " + label);
  }

  if (result.solvable) {
    g_round_trips.push_back({gadget.ts, type, result.admissible, label});
  } else {
    EXPECT(!result.unsolved_atoms.empty(), "unsolved atoms must be reported: " + label);
  }

  ++tally.cases;
  if (hs_yes != result.solvable) {
    ++tally.verdict_mismatches;
    if (tally.first_mismatch.empty()) {
      std::ostringstream what;
      what << label << ": hitting set " << (hs_yes ? "yes" : "no") << " but synthesis at d="
           << gadget.d << ' ' << (result.solvable ? "solvable" : "unsolvable");
      if (!result.solvable)
        what << ", e.g. " << atom_to_string(gadget.ts, result.unsolved_atoms.front());
      tally.first_mismatch = what.str();
    }
  }

  double dt = seconds_since(start);
  EXPECT(dt <= budget_seconds, "over time budget (" + std::to_string(dt) + "s): " + label);
}

MismatchTally run_reduction_cases() {
  const Theorem theorems[] = {Theorem::t21, Theorem::t22, Theorem::t23, Theorem::t24};
  g_reductions_collected = true;
  MismatchTally tally;
  // the running four-set instance, every construction
  for (Theorem t : theorems) {
    double budget = t == Theorem::t21 ? 300.0 : 3600.0;
    check_reduction_case(running_instance(2), t, budget,
                         "running/" + std::string(theorem_name(t)), tally);
  }
  // exhaustive small sweep
  auto instances = sweep_instances();
  int case_no = 0;
  for (const auto& inst : instances) {
    for (Theorem t : theorems) {
      std::ostringstream label;
      label << "sweep #" << case_no++ << " u=" << inst.universe_size() << " m=" << inst.set_count()
            << " kappa=" << inst.kappa << " thm=" << theorem_name(t);
      check_reduction_case(inst, t, 60.0, label.str(), tally);
    }
  }
  return tally;
}

// Criterion 5 draws on the solvable syntheses of criteria 2 and 6; when it
// runs standalone those cases are re-run here just to collect their nets.
void collect_round_trips_if_needed() {
  if (!g_example2_collected) {
    std::ostringstream sink;
    criterion_example2(sink);
  }
  if (!g_reductions_collected) run_reduction_cases();
}

void criterion_reduction_equivalence(std::ostringstream& log) {
  MismatchTally tally = run_reduction_cases();
  if (tally.verdict_mismatches > 0) {
    std::ostringstream what;
    what << tally.verdict_mismatches << " of " << tally.cases
         << " cases mismatch at the stated d (every solver verdict brute-force-validated; "
         << "extractions all valid); first: " << tally.first_mismatch;
    throw Failure(what.str());
  }
  log << tally.cases << " reduction cases, verdicts match, extractions valid";
}

// Not an acceptance criterion: the third construction holds exactly at its
// stated budget, so push it through the whole desk-scale instance space
// (universe of up to four, families of up to four sets of up to three
// elements, budgets up to two).
void info_t23_extended(std::ostringstream& log) {
  int cases = 0;
  for (int u = 1; u <= 4; ++u) {
    std::vector<std::string> universe;
    for (int i = 1; i <= u; ++i) universe.push_back("X" + std::to_string(i));
    std::vector<std::vector<std::string>> pool;
    for (int a = 0; a < u; ++a) {
      pool.push_back({universe[a]});
      for (int b = a + 1; b < u; ++b) {
        pool.push_back({universe[a], universe[b]});
        for (int c = b + 1; c < u; ++c) pool.push_back({universe[a], universe[b], universe[c]});
      }
    }
    int p = static_cast<int>(pool.size());
    std::vector<int> pick;
    // families of 1..4 distinct sets, enumerated as index combinations
    for (int m = 1; m <= 4 && m <= p; ++m) {
      pick.assign(m, 0);
      for (int j = 0; j < m; ++j) pick[j] = j;
      while (true) {
        std::vector<std::vector<std::string>> family;
        for (int j : pick) family.push_back(pool[j]);
        for (int kappa = 0; kappa <= 2; ++kappa) {
          auto inst = make_hs(universe, family, kappa);
          auto gadget = build_thm23(inst);
          SynthesisOptions options;
          options.stop_at_first_unsolved = true;
          options.hint = gadget.alpha;
          bool solvable =
              synthesize(gadget.ts, designated_type(Theorem::t23), gadget.d, options).solvable;
          if (solvable != hs_brute_force(inst).has_value()) {
            std::ostringstream what;
            what << "mismatch at " << serialize_hs(inst);
            throw Failure(what.str());
          }
          ++cases;
        }
        int j = m - 1;
        while (j >= 0 && pick[j] == p - m + j) --j;
        if (j < 0) break;
        pick[j]++;
        for (int l = j + 1; l < m; ++l) pick[l] = pick[l - 1] + 1;
      }
    }
  }
  log << cases << " cases at the stated budget, zero mismatches";
}

// Not an acceptance criterion: documents the directional repair.  At the
// stated budget, solvability still implies a hitting set (no-instances are
// never solvable); yes-instances become solvable once the budget is raised by
// a small per-construction constant.
void info_adjusted_budget(std::ostringstream& log) {
  const std::pair<Theorem, int> adjusted[] = {
      {Theorem::t21, 2}, {Theorem::t22, 1}, {Theorem::t23, 0}, {Theorem::t24, 3}};
  auto instances = sweep_instances();
  int cases = 0;
  for (const auto& [theorem, extra] : adjusted) {
    for (const auto& inst : instances) {
      auto gadget = build_gadget(inst, theorem);
      NetType type = designated_type(theorem);
      SynthesisOptions options;
      options.stop_at_first_unsolved = true;
      options.hint = gadget.alpha;
      bool hs_yes = hs_brute_force(inst).has_value();
      if (hs_yes) {
        EXPECT(synthesize(gadget.ts, type, gadget.d + extra, options).solvable,
               "yes-instance unsolvable even at the raised budget");
      } else {
        EXPECT(!synthesize(gadget.ts, type, gadget.d, options).solvable,
               "no-instance solvable at the stated budget");
      }
      ++cases;
    }
  }
  log << cases << " sweep cases: no-instances never solvable at the stated d; "
      << "yes-instances solvable at d plus 2/1/0/3 per construction";
}

void criterion_gadget_counts(std::ostringstream& log) {
  auto inst = running_instance(2);
  EXPECT(build_thm21(inst).ts.state_count() == 35, "first construction size");
  EXPECT(build_thm22(inst).ts.state_count() == 45, "second construction size");
  EXPECT(build_thm23(inst).ts.state_count() == 73, "third construction size");
  auto paths = relevant_paths(inst);
  std::vector<RelevantPath> from_1_3;
  for (const auto& rp : paths)
    if (rp.source_gadget == 1 && rp.source_pos == 3) from_1_3.push_back(rp);
  EXPECT(from_1_3.size() == 2, "closing event of gadget 1 is relevant twice");
  EXPECT((from_1_3[0] == RelevantPath{1, 3, 3, 1}), "path for gadget 3");
  EXPECT((from_1_3[1] == RelevantPath{1, 3, 4, 2}), "path for gadget 4");
  EXPECT(from_1_3[0].state_count() == 3 && from_1_3[1].state_count() == 4, "path lengths");
  log << "35/45/73 states and the two relevant paths check out";
}

void criterion_d_monotonicity(std::ostringstream& log) {
  auto corpus = random_corpus(100);
  int checks = 0;
  for (const auto& ts : corpus) {
    for (const auto& type : corpus_types()) {
      bool prev = false;
      for (int d : {0, 1, 2, 3}) {
        bool now = synthesize(ts, type, d).solvable;
        if (prev) EXPECT(now, "monotonicity violated");
        prev = now;
        ++checks;
      }
    }
  }
  log << checks << " solvability checks, monotone in d";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<Criterion> criteria = {
      {1, "fig2-reachability-graph", criterion_fig2},
      {2, "example2-verdicts", criterion_example2},
      {3, "example4-region", criterion_example4},
      {4, "enumerator-oracle-equivalence", criterion_enumerator_oracle},
      {6, "reduction-equivalence", criterion_reduction_equivalence},
      {5, "lemma-round-trip", criterion_lemma_round_trip},
      {7, "gadget-structural-counts", criterion_gadget_counts},
      {8, "d-monotonicity", criterion_d_monotonicity},
  };

  // no arguments: all criteria plus the info check; otherwise a list of
  // criterion numbers and/or "info"
  std::vector<std::string> selected(argv + 1, argv + argc);
  auto wants = [&](const std::string& key) {
    return selected.empty() ||
           std::find(selected.begin(), selected.end(), key) != selected.end();
  };

  int failures = 0;
  for (auto& criterion : criteria) {
    if (!wants(std::to_string(criterion.number))) continue;
    auto start = std::chrono::steady_clock::now();
    std::ostringstream log;
    try {
      criterion.body(log);
      std::printf("PASS %d %s (%.2fs) %s\n", criterion.number, criterion.name.c_str(),
                  seconds_since(start), log.str().c_str());
    } catch (const std::exception& e) {
      std::printf("FAIL %d %s (%.2fs) %s\n", criterion.number, criterion.name.c_str(),
                  seconds_since(start), e.what());
      ++failures;
    }
    std::fflush(stdout);
  }

  struct Extra {
    const char* key;
    const char* name;
    void (*body)(std::ostringstream&);
  };
  const Extra extras[] = {
      {"info", "directional-repair", info_adjusted_budget},
      {"t23", "third-construction-extended", info_t23_extended},
  };
  for (const Extra& extra : extras) {
    if (!wants(extra.key)) continue;
    auto start = std::chrono::steady_clock::now();
    std::ostringstream log;
    try {
      extra.body(log);
      std::printf("INFO - %s (%.2fs) %s\n", extra.name, seconds_since(start), log.str().c_str());
    } catch (const std::exception& e) {
      std::printf("INFO - %s (%.2fs) UNEXPECTED: %s\n", extra.name, seconds_since(start), e.what());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
