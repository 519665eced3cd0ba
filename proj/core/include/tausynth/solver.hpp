#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tausynth/region.hpp"
#include "tausynth/transition_system.hpp"

namespace tausynth {

struct SynthesisStats {
  std::uint64_t seeds_tried = 0;    // candidate seeds materialized and evaluated
  std::uint64_t valid_regions = 0;  // candidates that turned out to be regions
  double elapsed_seconds = 0.0;
};

struct SynthesisResult {
  bool solvable = false;
  std::vector<Region> admissible;             // when solvable: first solver per atom, deduplicated
  std::vector<SeparationAtom> unsolved_atoms; // when unsolvable: non-empty
  SynthesisStats stats;
};

struct SynthesisOptions {
  // Stop as soon as one atom is known to be unsolvable instead of classifying
  // every atom.  Implies a single-threaded run so the reported atoms do not
  // depend on scheduling.
  bool stop_at_first_unsolved = false;
  // Checked before everything else in stop_at_first_unsolved mode; useful when
  // the caller knows which atom is likely to fail.
  std::optional<SeparationAtom> hint;
  // Abort (by throwing SeedLimitExceeded) once this many seeds were evaluated.
  // 0 means no limit.
  std::uint64_t seed_limit = 0;
  int threads = 1;
};

struct SeedLimitExceeded : std::runtime_error {
  std::uint64_t limit;
  explicit SeedLimitExceeded(std::uint64_t limit_)
      : std::runtime_error("seed limit of " + std::to_string(limit_) + " exceeded"), limit(limit_) {}
};

// Rejects d < 0 and, for types without nop, d < |E| (every event then counts
// against the budget, so smaller d cannot work and the enumeration below has
// no stratum to start from).
void validate_problem(const TransitionSystem& ts, const NetType& type, int d);

// Streams every valid region with restriction_count <= d exactly once, in seed
// order: ascending count of non-nop events, then lexicographic event subsets,
// then lexicographic interaction assignments (enum order), then support of the
// initial state 0 before 1.  When the stream is drained, seeds_tried() equals
// the closed-form candidate count.
class RegionEnumerator {
 public:
  RegionEnumerator(const TransitionSystem& ts, const NetType& type, int d);

  std::optional<Region> next();
  std::uint64_t seeds_tried() const { return seeds_; }

  static std::uint64_t seed_count(int event_count, int assignable_interactions, int d, bool has_nop);

 private:
  bool advance();

  const TransitionSystem& ts_;
  NetType type_;
  int d_;
  SpanningTree tree_;
  std::vector<Interaction> pool_;  // assignable interactions per chosen event
  bool has_nop_;
  int stratum_ = 0;
  std::vector<int> subset_;
  std::vector<int> assignment_;  // index into pool_ per subset slot
  int sup_initial_ = 0;
  bool exhausted_ = false;
  bool fresh_ = true;
  std::uint64_t seeds_ = 0;
  std::vector<Interaction> signature_;
};

// Decides DRtauS: verdict solvable iff every separation atom has a solving
// d-restricted region.  The admissible set picks, for each atom in
// enumeration order, the first solving region in seed order (deduplicated);
// the result is identical for every thread count.
SynthesisResult synthesize(const TransitionSystem& ts, const NetType& type, int d,
                           const SynthesisOptions& options = {});

// First region in seed order solving the atom, or absent when no d-restricted
// region does.  The atom must be one of enumerate_atoms(ts).
std::optional<Region> solve_single_atom(const TransitionSystem& ts, const NetType& type, int d,
                                        const SeparationAtom& atom);

}  // namespace tausynth
