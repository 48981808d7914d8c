#pragma once

#include <utility>
#include <vector>

#include "sched/exact.hpp"
#include "sched/lift.hpp"

namespace sched::rounding {

enum class ParamMode { Practical, Theoretical };

struct RoundingParams {
  ParamMode mode = ParamMode::Practical;
  Rat epsilon = Rat(1, 2);
  int k = 1;               // PRACTICAL gap width
  Rat delta = Rat(1, 4);   // PRACTICAL density bound
  int c1 = 1;              // constant in the theoretical k formula
  int base_case_threshold = 4;  // PRACTICAL: |I*| <= threshold
  int level = 0;           // lift level r
  bool base_case_by_conditioning = false;
  ExactLimits exact_limits;
  lift::LiftOptions lift_opts;
};

// Parameters pinned for one run; THEORETICAL mode derives k and delta
// from the root horizon.
struct EffectiveParams {
  int k = 1;
  Rat delta = Rat(1, 4);
  Rat epsilon = Rat(1, 2);
  int m = 1;
  int rootT = 1;
  int log2T = 0;
};

// Smallest k >= 1 with k >= (c1*m/eps) * log2 log2 T, exactly.
int theoretical_k(const Rat& eps, int m, int rootT, int c1);
// delta = eps / (8 k^2 m 2^{2k^2} log2 T).
Rat theoretical_delta(const Rat& eps, int m, int rootT, int k);
// Level budget log2(T*) * 2 m k^2 * 2^{k^2} / delta; reporting only.
Rat theoretical_r_star(int k, const Rat& delta, int m, int Tstar);

EffectiveParams effective_params(const RoundingParams& params, int rootT, int m);

struct RoundingStats {
  int T = 0;         // padded lift horizon
  int makespan = 0;  // final schedule horizon = T + total discards
  long discard_recursive = 0;     // (A) of the discard accounting
  long discard_matching_edf = 0;  // (B)
  long discard_middle = 0;        // (C)
  long conditionings = 0;         // chain-breaking events
  long resolves = 0;
  long base_case_fallbacks = 0;
  long chain_break_skips = 0;
  long top_jobs_seen = 0;   // jobs routed through matching + EDF
  long recursion_nodes = 0;
  bool middle_level_warning = false;
};

struct WindowsInconsistent : std::runtime_error {
  int a = -1, b = -1;
  WindowsInconsistent(int a_, int b_)
      : std::runtime_error("windows of dependent jobs " + std::to_string(a_) +
                           " and " + std::to_string(b_) + " are inconsistent"),
        a(a_), b(b_) {}
};

// Step 1: condition until every interval of levels 0..k^2-1 owns a
// low-dependence job set, Delta(J(I,y)) <= delta|I|. Returns the vector
// and the number of conditioning events. A job whose re-solve fails in
// both halves is skipped and counted, never looped on.
struct BreakChainsResult {
  lift::HierarchyVector vec;
  long count = 0;
  long skips = 0;
};
BreakChainsResult break_chains(const lift::HierarchyVector& y,
                               const IntervalFamily& fam,
                               const EffectiveParams& eff, const JobSet& jstar,
                               lift::LiftContext& ctx);

// Step 2: alpha_i counts jobs owned by levels ik..(i+1)k-1; the smallest
// i with alpha_i <= eps/(4 log2 T) * T*  or  alpha_i <= eps/(2m) *
// sum_{j<i} alpha_j fixes lstar = (i+1)k. Without such an i (possible
// under PRACTICAL parameters) the argmin index is used and flagged.
struct MiddleChoice {
  int lstar = 1;
  JobSet top, middle, bottom;
  bool warned = false;
  std::vector<long> alpha;
};
MiddleChoice choose_middle_level(const lift::HierarchyVector& y,
                                 const IntervalFamily& fam,
                                 const EffectiveParams& eff,
                                 const JobSet& jstar);

// Release r_j / deadline d_j of a top job from the most pessimistic
// placement of its scheduled bottom predecessors and successors, aligned
// to the boundaries of the p = 2^lstar subintervals.
struct TopJobWindow {
  int job = -1;
  int release = 0, deadline = 0;  // absolute slots
  int ir = 0, id = 0;             // 1-based interval indices; ir > id empty
};
std::vector<TopJobWindow> compute_windows(const std::vector<int>& slot_of,
                                          const IntervalFamily& fam, int lstar,
                                          const JobSet& top,
                                          const Instance& inst);

// Maximum-cardinality capacitated matching of top jobs to the intervals
// of their windows; unmatched jobs are discarded. The witness places
// matched jobs into their interval's earliest free slots.
struct TopAssignment {
  std::vector<int> interval_of;   // per job, 1-based; 0 = unmatched
  std::vector<int> witness_slot;  // per job, absolute; 0 = none
  JobSet discarded;
  bool cert_fractional = false;  // y certifies the E+ fractional matching
};
TopAssignment top_matching(const std::vector<TopJobWindow>& windows,
                           const std::vector<int>& cap_interval, int p, int n,
                           const lift::HierarchyVector* y = nullptr,
                           const IntervalFamily* fam = nullptr, int lstar = 0,
                           const std::vector<int>* cap_slot = nullptr);

// Earliest Deadline First over slots with per-slot capacities: at each
// slot, repeatedly take the not-yet-handled job with the earliest
// deadline (ties by id) that is released, within deadline, and has every
// input predecessor finished earlier or discarded; jobs passing their
// deadline unscheduled are discarded. Requires consistent windows.
struct EdfResult {
  std::vector<int> slot_of;  // per job, absolute; 0 = none
  JobSet discarded;
};
EdfResult edf_schedule(const std::vector<TopJobWindow>& jobs,
                       const Instance& inst, const std::vector<int>& cap_slot,
                       Interval span);

// The interval recursion: base case solved exactly (greedy
// deadline discards if the lift level was too low for integral
// feasibility), otherwise chain breaking, middle-level discard,
// recursion on the lstar intervals, and top-job insertion via matching
// plus EDF.
struct NodeResult {
  std::vector<std::pair<int, int>> assign;  // (job, absolute slot)
  JobSet discarded;
  long a = 0, b = 0, c = 0;  // discard buckets at this node
};
NodeResult schedule_interval(const lift::HierarchyVector& y, Interval istar,
                             const JobSet& jstar, const RoundingParams& params,
                             const EffectiveParams& eff, lift::LiftContext& ctx,
                             RoundingStats& stats, int depth);

// Inserts each discarded job in its own fresh slot after the last
// predecessor and before the first successor; the horizon grows by
// exactly the number of discarded jobs.
PartialSchedule insert_discarded(const PartialSchedule& sched,
                                 const JobSet& discarded,
                                 const Instance& inst);

// Full pipeline: binary search the least lift-feasible horizon, pad to a
// power of two with dummy jobs, run the recursion on the root, insert
// the discarded jobs, and strip the dummies. The returned schedule
// covers the original jobs and is complete and valid.
std::pair<PartialSchedule, RoundingStats> round_full(
    const Instance& inst, const RoundingParams& params);

}  // namespace sched::rounding
