#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sched/rational.hpp"

namespace sched::lp {

enum class Rel { Le, Ge, Eq };

struct LPResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Linear model with rational coefficients and per-variable bounds.
// Feasibility is the default mode; a linear objective can be minimized
// on top of it.
//
// Dump grammar (bit-exact rationals as p/q):
//   model <rows> <vars>
//   var <idx> <lo> <hi|inf>
//   row <idx>: <coef> x<idx> [+ <coef> x<idx> ...] <=|>=|= <rhs>
struct LPModel {
  struct Row {
    std::vector<std::pair<int, Rat>> terms;  // (var, coefficient)
    Rel rel = Rel::Le;
    Rat rhs;
  };

  std::vector<Rat> lo;
  std::vector<std::optional<Rat>> hi;
  std::vector<Row> rows;

  int num_vars() const { return static_cast<int>(lo.size()); }
  int add_var(const Rat& lo_, std::optional<Rat> hi_);
  void add_row(std::vector<std::pair<int, Rat>> terms, Rel rel, const Rat& rhs);
  std::size_t nonzeros() const;

  // Exact satisfaction check; returns the first violated row/bound.
  std::optional<std::string> violation(const std::vector<Rat>& x) const;
  bool check_point(const std::vector<Rat>& x) const { return !violation(x); }

  void dump(std::ostream& out) const;
};

struct SolveLimits {
  std::uint64_t max_pivots = 2'000'000;
  std::size_t max_nonzeros = 200'000;   // per model, fail loudly beyond
  std::size_t max_cells = 6'000'000;    // dense tableau size guard
};

// Nonnegative combination of rows contradicting the variable box:
// mu[i] <= 0 for Le rows, >= 0 for Ge rows, free for Eq rows. Combining
// gives v'x >= rhs while max of v'x over the bounds is strictly below
// rhs, i.e. 0 >= positive.
struct FarkasCertificate {
  std::vector<Rat> mu;
  bool valid(const LPModel& model) const;
};

enum class LPStatus { Feasible, Infeasible, Unbounded, ResourceLimit };

struct LPResult {
  LPStatus status = LPStatus::ResourceLimit;
  std::vector<Rat> x;                 // when Feasible
  std::optional<Rat> objective_value; // when minimizing
  FarkasCertificate farkas;           // when Infeasible
  std::uint64_t pivots = 0;
  std::string note;
};

// Two-phase dense-tableau simplex over exact rationals, bounded
// variables handled implicitly, Bland's pivot rule. Deterministic.
LPResult solve_feasibility(const LPModel& model, const SolveLimits& limits = {});
LPResult minimize(const LPModel& model, const std::vector<Rat>& cost,
                  const SolveLimits& limits = {});

// Feasibility solver that keeps its basis across row additions, for
// row-generation loops: appended rows are priced into the current
// tableau and repaired by a warm phase one over their artificials.
class IncrementalSolver {
 public:
  IncrementalSolver(LPModel base, const SolveLimits& limits = {});
  ~IncrementalSolver();
  IncrementalSolver(IncrementalSolver&&) noexcept;
  IncrementalSolver& operator=(IncrementalSolver&&) noexcept;

  void add_row(std::vector<std::pair<int, Rat>> terms, Rel rel, const Rat& rhs);
  LPStatus solve();  // Feasible, Infeasible, or ResourceLimit
  const std::vector<Rat>& point() const;        // valid after Feasible
  FarkasCertificate farkas() const;             // valid after Infeasible
  const LPModel& model() const;
  std::uint64_t pivots() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sched::lp
