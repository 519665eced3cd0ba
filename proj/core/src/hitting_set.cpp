#include "tausynth/hitting_set.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tausynth/transition_system.hpp"  // ParseError, valid_token

namespace tausynth {

HittingSetInstance make_hs(std::vector<std::string> universe,
                           const std::vector<std::vector<std::string>>& family, int kappa) {
  if (kappa < 0) throw std::invalid_argument("kappa must be non-negative");
  std::set<std::string> seen(universe.begin(), universe.end());
  if (seen.size() != universe.size()) throw std::invalid_argument("duplicate universe element");

  HittingSetInstance inst;
  inst.universe = std::move(universe);
  inst.kappa = kappa;
  for (const auto& set_names : family) {
    if (set_names.empty()) throw std::invalid_argument("sets of the family must be non-empty");
    std::vector<int> indices;
    for (const auto& name : set_names) {
      auto it = std::find(inst.universe.begin(), inst.universe.end(), name);
      if (it == inst.universe.end())
        throw std::invalid_argument("set element '" + name + "' is not in the universe");
      indices.push_back(static_cast<int>(it - inst.universe.begin()));
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw std::invalid_argument("set repeats an element");
    inst.family.push_back(std::move(indices));
  }
  return inst;
}

HittingSetInstance parse_hs(const std::string& text) {
  std::optional<std::vector<std::string>> universe;
  std::vector<std::vector<std::string>> family;
  std::optional<int> kappa;

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
    if (kw == "universe") {
      if (universe) throw ParseError(lineno, "duplicate universe declaration");
      for (size_t i = 1; i < tok.size(); ++i)
        if (!valid_token(tok[i])) throw ParseError(lineno, "invalid identifier '" + tok[i] + "'");
      universe = std::vector<std::string>(tok.begin() + 1, tok.end());
    } else if (kw == "set") {
      if (tok.size() < 2) throw ParseError(lineno, "sets must be non-empty");
      family.emplace_back(tok.begin() + 1, tok.end());
    } else if (kw == "kappa") {
      if (tok.size() != 2) throw ParseError(lineno, "expected: kappa <number>");
      if (kappa) throw ParseError(lineno, "duplicate kappa declaration");
      try {
        kappa = std::stoi(tok[1]);
      } catch (...) {
        throw ParseError(lineno, "invalid kappa '" + tok[1] + "'");
      }
      if (*kappa < 0) throw ParseError(lineno, "kappa must be non-negative");
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!universe) throw ParseError(0, "missing universe declaration");
  if (!kappa) throw ParseError(0, "missing kappa declaration");
  try {
    return make_hs(std::move(*universe), family, *kappa);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string serialize_hs(const HittingSetInstance& inst) {
  std::ostringstream out;
  out << "universe";
  for (const auto& u : inst.universe) out << ' ' << u;
  out << '\n';
  for (const auto& set : inst.family) {
    out << "set";
    for (int i : set) out << ' ' << inst.universe[i];
    out << '\n';
  }
  out << "kappa " << inst.kappa << '\n';
  return out.str();
}

bool is_hitting_set(const HittingSetInstance& inst, const std::vector<std::string>& elements) {
  if (static_cast<int>(elements.size()) > inst.kappa) return false;
  std::vector<char> chosen(inst.universe.size(), 0);
  for (const auto& name : elements) {
    auto it = std::find(inst.universe.begin(), inst.universe.end(), name);
    if (it == inst.universe.end()) return false;
    chosen[it - inst.universe.begin()] = 1;
  }
  for (const auto& set : inst.family) {
    bool hit = false;
    for (int i : set) hit = hit || chosen[i];
    if (!hit) return false;
  }
  return true;
}

std::optional<std::vector<std::string>> hs_brute_force(const HittingSetInstance& inst) {
  int n = inst.universe_size();
  int limit = std::min(inst.kappa, n);
  std::vector<int> pick;
  // subsets by ascending size, each size in lexicographic order
  for (int size = 0; size <= limit; ++size) {
    pick.assign(size, 0);
    for (int j = 0; j < size; ++j) pick[j] = j;
    while (true) {
      std::vector<char> chosen(n, 0);
      for (int j : pick) chosen[j] = 1;
      bool all_hit = true;
      for (const auto& set : inst.family) {
        bool hit = false;
        for (int i : set) hit = hit || chosen[i];
        if (!hit) {
          all_hit = false;
          break;
        }
      }
      if (all_hit) {
        std::vector<std::string> out;
        for (int j : pick) out.push_back(inst.universe[j]);
        return out;
      }
      int j = size - 1;
      while (j >= 0 && pick[j] == n - size + j) --j;
      if (j < 0) break;
      pick[j]++;
      for (int l = j + 1; l < size; ++l) pick[l] = pick[l - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace tausynth
