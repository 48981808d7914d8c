#pragma once

#include <vector>

#include "sched/instance.hpp"

namespace sched {

// Ascending job IDs refined to a topological order (Kahn, min-ID).
std::vector<int> default_priority(const Instance& inst);

// Graham list scheduling: at each slot, fill up to m machines with the
// earliest-priority available jobs. `priority` must be a topological
// order of the precedence; rejected otherwise. Complete, no discards.
PartialSchedule graham_list(const Instance& inst,
                            const std::vector<int>& priority);

struct CoffmanGrahamResult {
  PartialSchedule schedule;
  std::vector<int> labels;  // permutation of 1..n
};

// Coffman-Graham labeling on the transitive reduction followed by list
// scheduling with decreasing labels. Optimal for m = 2.
CoffmanGrahamResult coffman_graham(const Instance& inst);

}  // namespace sched
