#include "tausynth/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

namespace tausynth {

void validate_problem(const TransitionSystem& ts, const NetType& type, int d) {
  if (d < 0) throw std::invalid_argument("d must be non-negative");
  if (!type.contains(Interaction::nop) && d < ts.event_count())
    throw std::invalid_argument("type without nop: every event counts against d, need d >= " +
                                std::to_string(ts.event_count()));
}

// ---------------------------------------------------------------------------
// naive seed stream

RegionEnumerator::RegionEnumerator(const TransitionSystem& ts, const NetType& type, int d)
    : ts_(ts), type_(type), d_(d), tree_(spanning_tree(ts)) {
  validate_problem(ts, type, d);
  has_nop_ = type.contains(Interaction::nop);
  pool_ = has_nop_ ? type.non_nop_members() : type.members();
  stratum_ = has_nop_ ? 0 : ts.event_count();
  subset_.resize(stratum_);
  for (int j = 0; j < stratum_; ++j) subset_[j] = j;
  assignment_.assign(stratum_, 0);
  signature_.assign(ts.event_count(), Interaction::nop);
  if (stratum_ > 0 && pool_.empty()) exhausted_ = true;  // nothing assignable
}

bool RegionEnumerator::advance() {
  if (sup_initial_ == 0) {
    sup_initial_ = 1;
    return true;
  }
  sup_initial_ = 0;
  // next assignment, last slot fastest
  for (int j = stratum_ - 1; j >= 0; --j) {
    if (assignment_[j] + 1 < static_cast<int>(pool_.size())) {
      assignment_[j]++;
      std::fill(assignment_.begin() + j + 1, assignment_.end(), 0);
      return true;
    }
  }
  // next subset of the same size (lexicographic successor)
  int n = ts_.event_count();
  for (int j = stratum_ - 1; j >= 0; --j) {
    if (subset_[j] < n - (stratum_ - j)) {
      subset_[j]++;
      for (int l = j + 1; l < stratum_; ++l) subset_[l] = subset_[l - 1] + 1;
      std::fill(assignment_.begin(), assignment_.end(), 0);
      return true;
    }
  }
  // next stratum
  if (!has_nop_ || stratum_ >= std::min(d_, n)) return false;
  stratum_++;
  subset_.resize(stratum_);
  for (int j = 0; j < stratum_; ++j) subset_[j] = j;
  assignment_.assign(stratum_, 0);
  if (stratum_ > 0 && pool_.empty()) return false;
  return true;
}

std::optional<Region> RegionEnumerator::next() {
  while (!exhausted_) {
    if (!fresh_) {
      if (!advance()) {
        exhausted_ = true;
        break;
      }
    }
    fresh_ = false;
    std::fill(signature_.begin(), signature_.end(), Interaction::nop);
    for (int j = 0; j < stratum_; ++j) signature_[subset_[j]] = pool_[assignment_[j]];
    ++seeds_;
    auto region = region_from_seed(ts_, type_, sup_initial_, signature_, tree_);
    if (region) return region;
  }
  return std::nullopt;
}

std::uint64_t RegionEnumerator::seed_count(int event_count, int assignable, int d, bool has_nop) {
  auto powk = [&](int e) {
    std::uint64_t r = 1;
    for (int j = 0; j < e; ++j) r *= static_cast<std::uint64_t>(assignable);
    return r;
  };
  if (!has_nop) return 2 * powk(event_count);
  std::uint64_t total = 0;
  std::uint64_t choose = 1;  // C(event_count, i)
  for (int i = 0; i <= std::min(d, event_count); ++i) {
    if (i > 0) choose = choose * static_cast<std::uint64_t>(event_count - i + 1) / i;
    total += choose * powk(i);
  }
  return 2 * total;
}

// ---------------------------------------------------------------------------
// batched atom search
//
// Seeds are explored in exactly the stream order above, but organised as a
// backtracking search so that whole families of seeds that provably cannot
// contain a solving region are skipped.  Events excluded from the current
// subset are nop, which forces equal supports across their edges; a union-find
// with rollback maintains these classes while the subset is chosen, and
// per-class forced support bits catch contradictions early.

namespace {

struct Rule {
  std::int8_t src;  // forced source bit, -1 free
  std::int8_t dst;  // forced target bit, -1 free
  std::int8_t fix;  // self-loop requirement: bit, -1 impossible, 2 any
  bool swp;         // target is the complement of the source
};

constexpr Rule rule_for(int i) {
  const std::int8_t r0 = kInteractionTable[i][0];
  const std::int8_t r1 = kInteractionTable[i][1];
  Rule r{-1, -1, -1, false};
  if (r0 < 0) r.src = 1;
  if (r1 < 0) r.src = 0;
  if (r0 == 0 && r1 != 1) r.dst = 0;
  if (r0 != 0 && r1 == 1) r.dst = 1;
  if (r0 == 1 && r1 != 0) r.dst = 1;
  if (r0 != 1 && r1 == 0) r.dst = 0;
  if (r0 == 0 && r1 == 1) r.fix = 2;
  else if (r0 == 0) r.fix = 0;
  else if (r1 == 1) r.fix = 1;
  r.swp = (r0 == 1 && r1 == 0);
  return r;
}

constexpr std::array<Rule, kInteractionCount> make_rules() {
  std::array<Rule, kInteractionCount> rules{};
  for (int i = 0; i < kInteractionCount; ++i) rules[i] = rule_for(i);
  return rules;
}

constexpr auto kRules = make_rules();

struct JobOutcome {
  std::vector<std::optional<Region>> solution;  // parallel to the job's atoms
  std::uint64_t seeds = 0;
  std::uint64_t valid = 0;
};

class BatchSearch {
 public:
  BatchSearch(const TransitionSystem& ts, const NetType& type, int d,
              const std::vector<SeparationAtom>& atoms, std::uint64_t seed_limit,
              std::atomic<std::uint64_t>* seed_total)
      : ts_(ts), type_(type), d_(d), atoms_(atoms), seed_limit_(seed_limit),
        seed_total_(seed_total) {
    S_ = ts.state_count();
    E_ = ts.event_count();
    has_nop_ = type.contains(Interaction::nop);
    pool_ = has_nop_ ? type.non_nop_members() : type.members();
    by_event_.resize(E_);
    for (const auto& e : ts.edges) by_event_[e.event].push_back({e.src, e.dst});
    essp_ = !atoms.empty() && atoms.front().kind == SeparationAtom::Kind::essp;
    if (essp_) {
      event0_ = atoms.front().first;
      for (Interaction i : pool_)
        if (interaction_partial(i)) allowed0_.push_back(i);
      for (int c = 0; c < 2; ++c) {
        can_solve_[c] = false;
        for (Interaction i : allowed0_)
          if (kInteractionTable[static_cast<int>(i)][c] < 0) can_solve_[c] = true;
      }
    }
    outcome_.solution.resize(atoms.size());
  }

  JobOutcome run() {
    parent_.resize(S_);
    rank_.assign(S_, 0);
    color_.assign(S_, -1);
    for (int s = 0; s < S_; ++s) parent_[s] = s;
    remaining_.clear();
    for (int i = 0; i < static_cast<int>(atoms_.size()); ++i) remaining_.push_back(i);

    bool feasible = !remaining_.empty() && !pool_.empty();
    if (essp_ && allowed0_.empty()) feasible = false;
    if (feasible && essp_) feasible = seed_unit_colors();
    if (feasible) {
      chosen_.clear();
      try {
        int lo = has_nop_ ? 1 : E_;
        int hi = has_nop_ ? std::min(d_, E_) : E_;
        for (target_ = lo; target_ <= hi; ++target_)
          if (!dfs(0, 0)) break;
      } catch (...) {
        flush_seeds();
        throw;
      }
    }
    flush_seeds();
    return std::move(outcome_);
  }

 private:
  // Forced support bits shared by every interaction the batch event may take.
  bool seed_unit_colors() {
    std::int8_t src = -1, dst = -1;
    bool first = true;
    for (Interaction i : allowed0_) {
      const Rule& r = kRules[static_cast<int>(i)];
      if (first) {
        src = r.src;
        dst = r.dst;
        first = false;
      } else {
        if (src != r.src) src = -1;
        if (dst != r.dst) dst = -1;
      }
    }
    for (auto [u, v] : by_event_[event0_]) {
      if (src >= 0 && !force(find(u), src)) return false;
      if (dst >= 0 && !force(find(v), dst)) return false;
    }
    return true;
  }

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  struct TrailOp {
    enum Kind : std::uint8_t { kUnion, kColor } kind;
    int a;  // union: child root; color: root
    int b;  // union: parent root
    std::int8_t old_color;
    bool bumped;
  };

  size_t mark() const { return trail_.size(); }

  void rollback(size_t m) {
    while (trail_.size() > m) {
      const TrailOp& op = trail_.back();
      if (op.kind == TrailOp::kUnion) {
        parent_[op.a] = op.a;
        color_[op.b] = op.old_color;
        if (op.bumped) rank_[op.b]--;
      } else {
        color_[op.a] = op.old_color;
      }
      trail_.pop_back();
    }
  }

  bool force(int root, std::int8_t c) {
    if (color_[root] == c) return true;
    if (color_[root] != -1) return false;
    trail_.push_back({TrailOp::kColor, root, 0, color_[root], false});
    color_[root] = c;
    changed_ = true;
    return true;
  }

  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return true;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    std::int8_t pc = color_[ra], cc = color_[rb];
    if (pc >= 0 && cc >= 0 && pc != cc) return false;
    bool bumped = false;
    if (rank_[ra] == rank_[rb]) {
      rank_[ra]++;
      bumped = true;
    }
    parent_[rb] = ra;
    trail_.push_back({TrailOp::kUnion, rb, ra, pc, bumped});
    if (pc < 0 && cc >= 0) color_[ra] = cc;
    return true;
  }

  bool contract(int event) {
    for (auto [u, v] : by_event_[event])
      if (!unite(u, v)) return false;
    return true;
  }

  bool atom_dead(const SeparationAtom& atom) const {
    if (atom.kind == SeparationAtom::Kind::ssp)
      return find(atom.first) == find(atom.second);
    std::int8_t c = color_[find(atom.second)];
    return c >= 0 && !can_solve_[c];
  }

  bool all_pending_dead() const {
    if (remaining_.size() > 24) return false;  // not worth scanning high up in the tree
    for (int idx : remaining_)
      if (!atom_dead(atoms_[idx])) return false;
    return true;
  }

  // Subset DFS: include-first recursion emits size target_ subsets in
  // lexicographic order; excluded events are contracted on the way down.
  // Returns false to stop the whole search (every atom served or aborted).
  bool dfs(int pos, int chosen) {
    if (remaining_.empty()) return false;
    if (pos == E_) return chosen == target_ ? assignments() : true;
    if (target_ - chosen > E_ - pos) return true;
    if (chosen < target_) {
      chosen_.push_back(pos);
      bool keep = dfs(pos + 1, chosen + 1);
      chosen_.pop_back();
      if (!keep) return false;
    }
    if (essp_ && pos == event0_) return true;
    if (target_ - chosen > E_ - pos - 1) return true;
    size_t m = mark();
    bool viable = contract(pos);
    if (viable && all_pending_dead()) viable = false;
    bool keep = true;
    if (viable) keep = dfs(pos + 1, chosen);
    rollback(m);
    return keep;
  }

  bool apply_edge(int ru, int rv, const Rule& rule) {
    if (ru == rv) {
      if (rule.fix == -1) return false;
      if (rule.fix != 2 && !force(ru, rule.fix)) return false;
      return true;
    }
    if (rule.src >= 0 && !force(ru, rule.src)) return false;
    if (rule.dst >= 0 && !force(rv, rule.dst)) return false;
    if (rule.swp) {
      if (color_[ru] >= 0) return force(rv, static_cast<std::int8_t>(1 - color_[ru]));
      if (color_[rv] >= 0) return force(ru, static_cast<std::int8_t>(1 - color_[rv]));
    }
    return true;
  }

  bool fixpoint(int slots) {
    do {
      changed_ = false;
      for (int j = 0; j < slots; ++j) {
        const Rule& rule = kRules[static_cast<int>(assign_[j])];
        for (auto [ru, rv] : slot_edges_[j])
          if (!apply_edge(ru, rv, rule)) return false;
      }
    } while (changed_);
    return true;
  }

  bool assignments() {
    if (all_pending_dead()) return true;
    int n = target_;
    slot_edges_.assign(n, {});
    assign_.assign(n, Interaction::nop);
    e0_slot_ = -1;
    for (int j = 0; j < n; ++j) {
      for (auto [u, v] : by_event_[chosen_[j]]) slot_edges_[j].push_back({find(u), find(v)});
      if (essp_ && chosen_[j] == event0_) e0_slot_ = j;
    }
    return assign_slot(0);
  }

  bool assign_slot(int j) {
    if (remaining_.empty()) return false;
    if (j == target_) return eval_leaf();
    const std::vector<Interaction>& options = (j == e0_slot_) ? allowed0_ : pool_;
    for (Interaction p : options) {
      size_t m = mark();
      assign_[j] = p;
      bool ok = true;
      const Rule& rule = kRules[static_cast<int>(p)];
      for (auto [ru, rv] : slot_edges_[j])
        if (!apply_edge(ru, rv, rule)) {
          ok = false;
          break;
        }
      if (ok) ok = fixpoint(j + 1);
      if (ok && !assign_slot(j + 1)) {
        rollback(m);
        return false;
      }
      rollback(m);
    }
    return true;
  }

  void count_seed() {
    ++outcome_.seeds;
    if (seed_total_) {
      if (++unflushed_ >= 4096) flush_seeds();
      if (seed_limit_ && cached_total_ + unflushed_ > seed_limit_) {
        flush_seeds();
        if (cached_total_ > seed_limit_) throw SeedLimitExceeded(seed_limit_);
      }
    }
  }

  void flush_seeds() {
    if (seed_total_ && unflushed_) {
      cached_total_ = seed_total_->fetch_add(unflushed_) + unflushed_;
      unflushed_ = 0;
    }
  }

  bool eval_leaf() {
    for (std::int8_t sup = 0; sup <= 1; ++sup) {
      count_seed();
      size_t m = mark();
      if (force(find(ts_.initial), sup) && fixpoint(target_)) {
        ++outcome_.valid;
        harvest();
        if (remaining_.empty()) {
          rollback(m);
          return false;
        }
      }
      rollback(m);
    }
    return true;
  }

  // The current colors describe a valid region; serve every pending atom it
  // solves.
  void harvest() {
    std::optional<Region> materialized;
    for (size_t i = 0; i < remaining_.size();) {
      const SeparationAtom& atom = atoms_[remaining_[i]];
      bool hit;
      if (atom.kind == SeparationAtom::Kind::ssp) {
        std::int8_t ca = color_[find(atom.first)], cb = color_[find(atom.second)];
        if (ca < 0 || cb < 0) throw std::logic_error("batch search left a support bit undetermined");
        hit = ca != cb;
      } else {
        std::int8_t c = color_[find(atom.second)];
        if (c < 0) throw std::logic_error("batch search left a support bit undetermined");
        hit = kInteractionTable[static_cast<int>(assign_[e0_slot_])][c] < 0;
      }
      if (!hit) {
        ++i;
        continue;
      }
      if (!materialized) {
        Region r;
        r.support.resize(S_);
        for (int s = 0; s < S_; ++s) {
          std::int8_t c = color_[find(s)];
          if (c < 0) throw std::logic_error("batch search left a support bit undetermined");
          r.support[s] = static_cast<std::uint8_t>(c);
        }
        r.signature.assign(E_, Interaction::nop);
        for (int j = 0; j < target_; ++j) r.signature[chosen_[j]] = assign_[j];
        materialized = std::move(r);
      }
      outcome_.solution[remaining_[i]] = *materialized;
      remaining_[i] = remaining_.back();
      remaining_.pop_back();
    }
  }

  const TransitionSystem& ts_;
  NetType type_;
  int d_;
  const std::vector<SeparationAtom>& atoms_;
  std::uint64_t seed_limit_;
  std::atomic<std::uint64_t>* seed_total_;

  int S_ = 0, E_ = 0;
  bool has_nop_ = false;
  std::vector<Interaction> pool_;
  std::vector<std::vector<std::pair<int, int>>> by_event_;
  bool essp_ = false;
  int event0_ = -1;
  std::vector<Interaction> allowed0_;
  bool can_solve_[2] = {false, false};

  mutable std::vector<int> parent_;
  std::vector<int> rank_;
  std::vector<std::int8_t> color_;
  std::vector<TrailOp> trail_;
  bool changed_ = false;

  int target_ = 0;
  std::vector<int> chosen_;
  std::vector<std::vector<std::pair<int, int>>> slot_edges_;
  std::vector<Interaction> assign_;
  int e0_slot_ = -1;
  std::vector<int> remaining_;

  JobOutcome outcome_;
  std::uint64_t unflushed_ = 0;
  std::uint64_t cached_total_ = 0;
};

struct Job {
  std::vector<SeparationAtom> atoms;
  std::vector<int> origin;  // index into the global atom list
};

std::vector<Job> plan_jobs(const std::vector<SeparationAtom>& atoms) {
  std::vector<Job> jobs;
  Job ssp;
  std::map<int, Job> essp;
  for (int i = 0; i < static_cast<int>(atoms.size()); ++i) {
    if (atoms[i].kind == SeparationAtom::Kind::ssp) {
      ssp.atoms.push_back(atoms[i]);
      ssp.origin.push_back(i);
    } else {
      Job& job = essp[atoms[i].first];
      job.atoms.push_back(atoms[i]);
      job.origin.push_back(i);
    }
  }
  if (!ssp.atoms.empty()) jobs.push_back(std::move(ssp));
  for (auto& [event, job] : essp) jobs.push_back(std::move(job));
  return jobs;
}

}  // namespace

SynthesisResult synthesize(const TransitionSystem& ts, const NetType& type, int d,
                           const SynthesisOptions& options) {
  validate_problem(ts, type, d);
  auto t0 = std::chrono::steady_clock::now();
  SynthesisResult result;
  std::atomic<std::uint64_t> seed_total{0};

  std::vector<SeparationAtom> atoms = enumerate_atoms(ts);

  if (options.stop_at_first_unsolved && options.hint) {
    std::vector<SeparationAtom> one{*options.hint};
    BatchSearch probe(ts, type, d, one, options.seed_limit, &seed_total);
    JobOutcome out = probe.run();
    result.stats.seeds_tried += out.seeds;
    result.stats.valid_regions += out.valid;
    if (!out.solution[0]) {
      result.solvable = false;
      result.unsolved_atoms.push_back(*options.hint);
      result.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return result;
    }
  }

  std::vector<Job> jobs = plan_jobs(atoms);
  std::vector<JobOutcome> outcomes(jobs.size());

  int threads = options.stop_at_first_unsolved ? 1 : std::max(1, options.threads);
  if (threads <= 1 || jobs.size() <= 1) {
    for (size_t j = 0; j < jobs.size(); ++j) {
      BatchSearch search(ts, type, d, jobs[j].atoms, options.seed_limit, &seed_total);
      outcomes[j] = search.run();
      if (options.stop_at_first_unsolved) {
        bool bad = false;
        for (const auto& s : outcomes[j].solution) bad = bad || !s;
        if (bad) {
          // report this job's findings only; later jobs were not examined
          for (size_t i = 0; i < jobs[j].atoms.size(); ++i)
            if (!outcomes[j].solution[i]) result.unsolved_atoms.push_back(jobs[j].atoms[i]);
          result.solvable = false;
          for (size_t l = 0; l <= j; ++l) {
            result.stats.seeds_tried += outcomes[l].seeds;
            result.stats.valid_regions += outcomes[l].valid;
          }
          result.stats.elapsed_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          return result;
        }
      }
    }
  } else {
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
      while (!failed.load()) {
        size_t j = next.fetch_add(1);
        if (j >= jobs.size()) break;
        try {
          BatchSearch search(ts, type, d, jobs[j].atoms, options.seed_limit, &seed_total);
          outcomes[j] = search.run();
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<std::optional<Region>> solution(atoms.size());
  for (size_t j = 0; j < jobs.size(); ++j) {
    result.stats.seeds_tried += outcomes[j].seeds;
    result.stats.valid_regions += outcomes[j].valid;
    for (size_t i = 0; i < jobs[j].origin.size(); ++i)
      solution[jobs[j].origin[i]] = std::move(outcomes[j].solution[i]);
  }

  for (size_t i = 0; i < atoms.size(); ++i)
    if (!solution[i]) result.unsolved_atoms.push_back(atoms[i]);
  result.solvable = result.unsolved_atoms.empty();
  if (result.solvable) {
    std::map<std::pair<std::vector<std::uint8_t>, std::vector<Interaction>>, bool> seen;
    for (size_t i = 0; i < atoms.size(); ++i) {
      Region& r = *solution[i];
      auto key = std::make_pair(r.support, r.signature);
      if (seen.emplace(std::move(key), true).second) result.admissible.push_back(std::move(r));
    }
  }
  result.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::optional<Region> solve_single_atom(const TransitionSystem& ts, const NetType& type, int d,
                                        const SeparationAtom& atom) {
  validate_problem(ts, type, d);
  bool ok;
  if (atom.kind == SeparationAtom::Kind::ssp) {
    ok = atom.first >= 0 && atom.first < atom.second && atom.second < ts.state_count();
  } else {
    ok = atom.first >= 0 && atom.first < ts.event_count() && atom.second >= 0 &&
         atom.second < ts.state_count() && !ts.event_occurs_at(atom.second, atom.first);
  }
  if (!ok) throw std::invalid_argument("atom does not belong to this transition system");
  std::vector<SeparationAtom> one{atom};
  BatchSearch search(ts, type, d, one, 0, nullptr);
  JobOutcome out = search.run();
  return out.solution[0];
}

}  // namespace tausynth
