#include "sched/exact.hpp"

#include <algorithm>
#include <unordered_map>
#include <vector>

namespace sched {

namespace {

struct Searcher {
  const Instance& inst;
  const ExactLimits& limits;
  int T;
  std::uint64_t nodes = 0;
  bool budget_hit = false;
  std::vector<std::uint64_t> pred_mask, succ_mask;
  std::vector<int> chain_from;
  // Best (lowest) elapsed value at which a down-set was reached.
  std::unordered_map<std::uint64_t, int> seen;
  std::vector<int> slots;  // slot per job while the DFS unwinds a witness

  Searcher(const Instance& i, int horizon, const ExactLimits& lim)
      : inst(i), limits(lim), T(horizon) {
    const int n = inst.n();
    pred_mask.assign(n, 0);
    succ_mask.assign(n, 0);
    chain_from.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      for (int u = inst.predecessors(j).find_first();
           u != static_cast<int>(JobSet::npos);
           u = inst.predecessors(j).find_next(u))
        pred_mask[j] |= 1ULL << u;
      chain_from[j] = inst.chain_from(j);
    }
    slots.assign(n, 0);
  }

  int lower_bound(std::uint64_t mask, int remaining) const {
    int chain = 0;
    for (int j = 0; j < inst.n(); ++j)
      if (!(mask >> j & 1)) chain = std::max(chain, chain_from[j]);
    int load = (remaining + inst.m() - 1) / inst.m();
    return std::max(load, chain);
  }

  // True iff all remaining jobs fit in slots elapsed+1..T. Unit jobs make
  // busy schedules dominant, so each slot runs min(m, |available|) jobs.
  bool dfs(std::uint64_t mask, int elapsed, int remaining) {
    if (remaining == 0) return true;
    if (budget_hit) return false;
    if (++nodes > limits.node_budget) {
      budget_hit = true;
      return false;
    }
    if (elapsed + lower_bound(mask, remaining) > T) return false;
    auto it = seen.find(mask);
    if (it != seen.end() && it->second <= elapsed) return false;
    seen[mask] = elapsed;

    std::vector<int> avail;
    for (int j = 0; j < inst.n(); ++j)
      if (!(mask >> j & 1) && (pred_mask[j] & ~mask) == 0) avail.push_back(j);
    const int take = std::min<int>(inst.m(), static_cast<int>(avail.size()));
    // Enumerate size-`take` subsets of avail in lexicographic job order.
    std::vector<int> pick(take);
    bool found = false;
    auto rec = [&](auto&& self, int start, int depth) -> bool {
      if (depth == take) {
        std::uint64_t add = 0;
        for (int j : pick) add |= 1ULL << j;
        if (dfs(mask | add, elapsed + 1, remaining - take)) {
          for (int j : pick) slots[j] = elapsed + 1;
          return true;
        }
        return false;
      }
      for (int i = start; i < static_cast<int>(avail.size()); ++i) {
        pick[depth] = avail[i];
        if (self(self, i + 1, depth + 1)) return true;
        if (budget_hit) return false;
      }
      return false;
    };
    found = take == 0 ? false : rec(rec, 0, 0);
    return found;
  }
};

}  // namespace

FeasibleResult feasible_within(const Instance& inst, int T,
                               const ExactLimits& limits) {
  FeasibleResult res;
  if (inst.n() > std::min(limits.max_jobs, 64))
    throw std::invalid_argument("instance exceeds the exact search cap of " +
                                std::to_string(std::min(limits.max_jobs, 64)) +
                                " jobs");
  if (inst.n() == 0) {
    res.verdict = SearchVerdict::Yes;
    res.witness = PartialSchedule::empty(0, T);
    return res;
  }
  if (T < 0) T = 0;
  Searcher s(inst, T, limits);
  bool ok = s.dfs(0, 0, inst.n());
  res.nodes = s.nodes;
  if (ok) {
    res.verdict = SearchVerdict::Yes;
    res.witness = PartialSchedule::empty(inst.n(), T);
    res.witness.slot = s.slots;
  } else if (s.budget_hit) {
    res.verdict = SearchVerdict::Unknown;
  } else {
    res.verdict = SearchVerdict::No;
  }
  return res;
}

OptimalResult optimal_makespan(const Instance& inst, const ExactLimits& limits) {
  OptimalResult res;
  if (inst.n() == 0) {
    res.known = true;
    res.makespan = 0;
    res.witness = PartialSchedule::empty(0, 0);
    return res;
  }
  int lb = std::max((inst.n() + inst.m() - 1) / inst.m(), inst.longest_chain());
  for (int T = lb; T <= inst.n(); ++T) {
    FeasibleResult f = feasible_within(inst, T, limits);
    res.nodes += f.nodes;
    if (f.verdict == SearchVerdict::Unknown) return res;  // known = false
    if (f.verdict == SearchVerdict::Yes) {
      res.known = true;
      res.makespan = T;
      res.witness = f.witness;
      return res;
    }
  }
  return res;  // unreachable: T = n is always feasible
}

}  // namespace sched
