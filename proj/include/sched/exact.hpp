#pragma once

#include <cstdint>
#include <optional>

#include "sched/instance.hpp"

namespace sched {

enum class SearchVerdict { Yes, No, Unknown };

struct ExactLimits {
  std::uint64_t node_budget = 5'000'000;
  int max_jobs = 20;  // soft cap; masks support up to 64
};

struct FeasibleResult {
  SearchVerdict verdict = SearchVerdict::Unknown;
  PartialSchedule witness;  // meaningful when verdict == Yes
  std::uint64_t nodes = 0;
};

struct OptimalResult {
  bool known = false;  // false means the node budget ran out
  int makespan = -1;
  PartialSchedule witness;
  std::uint64_t nodes = 0;
};

// Decision form: is there a complete feasible schedule within horizon T?
// Memoized depth-first search over down-sets of the precedence order;
// each state expands by the available antichain, pruned by
// max(ceil(remaining/m), longest remaining chain).
FeasibleResult feasible_within(const Instance& inst, int T,
                               const ExactLimits& limits = {});

// Exact minimum makespan with witness. Never returns a wrong number: if
// the budget runs out, `known` is false.
OptimalResult optimal_makespan(const Instance& inst,
                               const ExactLimits& limits = {});

}  // namespace sched
