#pragma once

#include "sched/instance.hpp"
#include "sched/lp.hpp"

namespace sched::relax {

using lp::LPModel;

// Variable id of x_{j,t} in K(T) row space; t is 1-based.
inline int xvar(int j, int t, int T) { return j * T + (t - 1); }

enum class PrecRows { Closure, Reduction };

// Rows of K(T) over the base variables x_{j,t}: per-job assignment sums,
// per-slot capacities, and prefix precedence rows
//   sum_{t'<=t} x_{i,t'} >= sum_{t'<=t+1} x_{j,t'}   for i prec j.
// The t = T instance of the prefix row is vacuous given the job sums and
// is omitted. Reduction rows span the same feasible set as closure rows
// (prefix rows compose along paths) and keep lifted scans small.
std::vector<LPModel::Row> base_rows(const Instance& inst, int T, PrecRows mode);

// The same rows normalized to ">= rhs" form (equalities split in two);
// used when building slack moment matrices.
std::vector<LPModel::Row> base_rows_ge(const Instance& inst, int T,
                                       PrecRows mode);

struct KInfo {
  int base_vars = 0;
  int interval_vars = 0;
  int job_sum_rows = 0;
  int capacity_rows = 0;
  int precedence_rows = 0;
  int interval_def_rows = 0;
};

struct KModel {
  LPModel model;
  KInfo info;
};

// The time-indexed LP K(T) with precedence rows over the transitive
// closure. When T is a power of two, interval aggregate variables
// x_{j,I} and their defining equalities are added for the non-leaf
// intervals of the binary laminar family (the only intervals the
// algorithm ever queries).
KModel build_K(const Instance& inst, int T);

// Slot window [earliest[j], latest[j]] implied by chain lengths; x_{j,t}
// vanishes outside the window in every feasible solution of K(T).
// latest[j] < earliest[j] signals an infeasible horizon.
void slot_windows(const Instance& inst, int T, std::vector<int>& earliest,
                  std::vector<int>& latest);

// Feasibility of K(T). Uses reduction rows plus window pinning, which
// leaves the verdict unchanged.
bool feasible_K(const Instance& inst, int T, const lp::SolveLimits& lim = {});

// Least T in [lo, hi] with K(T) feasible, by binary search on the
// monotone feasibility predicate. Throws if K(hi) is infeasible.
int min_feasible_T(const Instance& inst, int lo, int hi,
                   const lp::SolveLimits& lim = {});

}  // namespace sched::relax
