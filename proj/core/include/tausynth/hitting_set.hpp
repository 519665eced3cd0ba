#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tausynth {

// A Hitting Set instance: a universe, a family of non-empty subsets (each
// stored as strictly increasing universe indices) and a budget kappa.
struct HittingSetInstance {
  std::vector<std::string> universe;
  std::vector<std::vector<int>> family;
  int kappa = 0;

  int universe_size() const { return static_cast<int>(universe.size()); }
  int set_count() const { return static_cast<int>(family.size()); }
};

// Throws std::invalid_argument when a set is empty, references an element
// outside the universe, or repeats an element.  Sets are normalized to
// ascending index order.
HittingSetInstance make_hs(std::vector<std::string> universe,
                           const std::vector<std::vector<std::string>>& family, int kappa);

HittingSetInstance parse_hs(const std::string& text);
std::string serialize_hs(const HittingSetInstance& inst);

// Exhaustive search over subsets of size <= kappa, sizes ascending and each
// size in lexicographic index order; returns the first hitting set found.
std::optional<std::vector<std::string>> hs_brute_force(const HittingSetInstance& inst);

// True iff the given elements form a hitting set of size <= kappa.
bool is_hitting_set(const HittingSetInstance& inst, const std::vector<std::string>& elements);

}  // namespace tausynth
