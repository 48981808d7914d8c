#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sched/instance.hpp"
#include "sched/interval.hpp"
#include "sched/lp.hpp"
#include "sched/relax.hpp"

namespace sched::lift {

using lp::LPModel;

// Sorted list of base-variable ids (j*T + t - 1); the empty subset is {}.
using Subset = std::vector<int>;

struct SubsetHash {
  std::size_t operator()(const Subset& s) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (int v : s) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

struct LiftResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IncompleteVectorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a conditioning request cannot be honored (wrong-direction
// integral conditioning, or an infeasible level-0 re-solve).
struct ConditioningError : std::runtime_error {
  int var = -1;
  int value = -1;
  ConditioningError(const std::string& what, int var_, int value_)
      : std::runtime_error(what), var(var_), value(value_) {}
};

struct Fixings {
  std::vector<int> zeros, ones;  // base-variable ids
};

struct LiftOptions {
  lp::SolveLimits lp_limits;
  std::size_t max_subsets = 200'000;
  int scan_batch = 40;     // violated constraints added per master round
  int max_rounds = 400;
  bool seed_singleton_sums = true;  // conditional job sums seeded upfront
  bool trace = false;       // per-round progress on stderr
};

struct LiftStats {
  long solves = 0;
  long resolves = 0;            // re-solve fallbacks for conditioning
  long true_conditionings = 0;  // exact split steps
};

struct LiftContext {
  LiftOptions opts;
  LiftStats stats;
};

// Subset-indexed moment vector at some hierarchy level. Entries are
// stored sparsely; an absent entry of size <= cap is zero. `one_set`
// and `zero_set` record conditioned variables; get() canonicalizes
// queries through them.
class HierarchyVector {
 public:
  int level = 0;         // remaining conditioning budget
  int budget_level = 0;  // level the vector was solved at (re-solve target)
  int cap = 1;           // largest stored subset size
  int T = 0;
  std::shared_ptr<const Instance> inst;
  std::unordered_map<Subset, Rat, SubsetHash> values;
  std::set<int> zero_set, one_set;

  int var_id(int j, int t) const { return j * T + (t - 1); }
  int var_job(int v) const { return v / T; }
  int var_slot(int v) const { return v % T + 1; }

  // y_S with S canonicalized: one-pinned ids dropped, zero on zero-pinned
  // ids or absent entries. Throws IncompleteVectorError beyond cap.
  Rat get(Subset s) const;
  Rat y(int j, int t) const { return get({var_id(j, t)}); }
  Rat y_interval(int j, const Interval& I) const;

  // supp(j) = slots with positive singleton mass.
  std::vector<int> supp(int j) const;
  Interval supp_span(int j) const;  // [min, max] of supp; throws if empty

  // Exact convex combination; both inputs must share shape.
  static HierarchyVector convex_combine(const HierarchyVector& a, const Rat& wa,
                                        const HierarchyVector& b, const Rat& wb);

  // Sorted `{(j,t),...} = p/q` lines.
  void dump(std::ostream& out) const;
};

// Solves the level-r Sherali-Adams lift of K(T): subset variables up to
// size r+1 and, for every row a'x >= b of K(T) (bounds included) and all
// disjoint multiplier sets U, V with |U|+|V| <= r, the lifted constraint
//   sum_{W subseteq V} (-1)^{|W|} [ sum_i a_i y_{U u W u {i}} - b y_{U u W} ] >= 0.
// Constraints are generated lazily against full verification scans, so
// the returned vector satisfies every one of them. Returns nullopt when
// the lifted system is infeasible.
std::optional<HierarchyVector> solve_lift(const std::shared_ptr<const Instance>& inst,
                                          int T, int r, const Fixings& fixings,
                                          LiftContext& ctx);

// Full constraint scan of the level-r system against vec.get(); returns
// a description of the first violated constraint, or nullopt.
std::optional<std::string> verify_lift(const HierarchyVector& vec, int r);

// Conditioning on x_var = value. With level >= 1 this is the exact
// z^(0)/z^(1) split (the convex identity is checked before returning). At level 0 the level budget is exhausted and the vector is
// re-solved at budget_level with the accumulated fixings plus a zero pin
// for every base variable that already vanished, preserving support
// shrinking. Conditioning an integral variable in its own direction is
// the identity; in the wrong direction it throws.
HierarchyVector condition(const HierarchyVector& vec, int var, int value,
                          LiftContext& ctx);

// Conditions on the event "job j lands in I": value-0 conditioning of
// every positive x_{j,t} outside I, batched into one re-solve when the
// level budget does not cover the sequence.
HierarchyVector condition_on_interval(const HierarchyVector& vec, int j,
                                      const Interval& I, LiftContext& ctx);

// Deepest family level owning job j: max { l : exists I in level l with
// y_{j,I} = 1 }. Requires y_{j,root} = 1.
int owner_level(const HierarchyVector& vec, const IntervalFamily& fam, int j);

// Jobs of `among` owned by exactly level l / by interval I of its level.
JobSet jobs_at_level(const HierarchyVector& vec, const IntervalFamily& fam,
                     int l, const JobSet& among);
JobSet jobs_of_interval(const HierarchyVector& vec, const IntervalFamily& fam,
                        int level, int idx, const JobSet& among);

// Moment-matrix PSD verification (checking only, no SDP solving).
// Builds M_r(y) over index subsets of `vars` of size <= r and one slack
// moment matrix per ">=" row, then checks the minimum eigenvalue against
// -tol. The getter must supply every required entry.
struct PsdReport {
  bool ok = true;
  double min_eigenvalue = 0.0;
  std::string witness;  // matrix that attains the minimum
};
using MomentGetter = std::function<Rat(const Subset&)>;
PsdReport verify_moment_psd(const MomentGetter& get, const std::vector<int>& vars,
                            int r, const std::vector<LPModel::Row>& ge_rows,
                            double tol = 1e-9);
PsdReport verify_moment_psd(const HierarchyVector& vec, int r,
                            const std::vector<LPModel::Row>& ge_rows,
                            double tol = 1e-9);

// Product-extension vector of an integral schedule (every job assigned).
// Supplies entries of every size, for PSD checks on integral points.
MomentGetter integral_getter(const Instance& inst, const PartialSchedule& sched,
                             int T);

}  // namespace sched::lift
