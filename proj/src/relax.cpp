#include "sched/relax.hpp"

#include <algorithm>
#include <stdexcept>

#include "sched/interval.hpp"

namespace sched::relax {

std::vector<LPModel::Row> base_rows(const Instance& inst, int T,
                                    PrecRows mode) {
  const int n = inst.n();
  std::vector<LPModel::Row> rows;
  for (int j = 0; j < n; ++j) {
    LPModel::Row r;
    for (int t = 1; t <= T; ++t) r.terms.emplace_back(xvar(j, t, T), Rat(1));
    r.rel = lp::Rel::Eq;
    r.rhs = 1;
    rows.push_back(std::move(r));
  }
  for (int t = 1; t <= T; ++t) {
    LPModel::Row r;
    for (int j = 0; j < n; ++j) r.terms.emplace_back(xvar(j, t, T), Rat(1));
    r.rel = lp::Rel::Le;
    r.rhs = inst.m();
    rows.push_back(std::move(r));
  }
  auto pairs = mode == PrecRows::Closure ? inst.closure_pairs()
                                         : inst.reduction_pairs();
  for (auto [i, j] : pairs) {
    // The t = 0 boundary row 0 >= x_{j,1} is the one that keeps a
    // successor out of the first slot; the t = T row is vacuous.
    for (int t = 0; t <= T - 1; ++t) {
      LPModel::Row r;
      for (int u = 1; u <= t; ++u) r.terms.emplace_back(xvar(i, u, T), Rat(1));
      for (int u = 1; u <= t + 1; ++u)
        r.terms.emplace_back(xvar(j, u, T), Rat(-1));
      r.rel = lp::Rel::Ge;
      r.rhs = 0;
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::vector<LPModel::Row> base_rows_ge(const Instance& inst, int T,
                                       PrecRows mode) {
  std::vector<LPModel::Row> out;
  for (auto& r : base_rows(inst, T, mode)) {
    if (r.rel == lp::Rel::Ge) {
      out.push_back(std::move(r));
    } else if (r.rel == lp::Rel::Le) {
      LPModel::Row g;
      for (auto& [v, c] : r.terms) g.terms.emplace_back(v, -c);
      g.rel = lp::Rel::Ge;
      g.rhs = -r.rhs;
      out.push_back(std::move(g));
    } else {
      LPModel::Row a = r;
      a.rel = lp::Rel::Ge;
      out.push_back(a);
      LPModel::Row b;
      for (auto& [v, c] : r.terms) b.terms.emplace_back(v, -c);
      b.rel = lp::Rel::Ge;
      b.rhs = -r.rhs;
      out.push_back(std::move(b));
    }
  }
  return out;
}

KModel build_K(const Instance& inst, int T) {
  if (T < 1) throw std::invalid_argument("horizon must be >= 1");
  KModel km;
  const int n = inst.n();
  km.info.base_vars = n * T;
  for (int v = 0; v < n * T; ++v) km.model.add_var(Rat(0), Rat(1));
  for (auto& r : base_rows(inst, T, PrecRows::Closure)) {
    km.model.rows.push_back(std::move(r));
  }
  km.info.job_sum_rows = n;
  km.info.capacity_rows = T;
  km.info.precedence_rows =
      static_cast<int>(km.model.rows.size()) - n - T;

  if (is_power_of_two(T) && n > 0) {
    IntervalFamily fam = IntervalFamily::over({1, T});
    for (int level = 0; level < fam.depth(); ++level) {
      for (int idx = 0; idx < fam.count_at(level); ++idx) {
        Interval I = fam.at(level, idx);
        for (int j = 0; j < n; ++j) {
          int agg = km.model.add_var(Rat(0), Rat(1));
          km.info.interval_vars++;
          LPModel::Row r;
          r.terms.emplace_back(agg, Rat(1));
          for (int t = I.lo; t <= I.hi; ++t)
            r.terms.emplace_back(xvar(j, t, T), Rat(-1));
          r.rel = lp::Rel::Eq;
          r.rhs = 0;
          km.model.rows.push_back(std::move(r));
          km.info.interval_def_rows++;
        }
      }
    }
  }
  return km;
}

void slot_windows(const Instance& inst, int T, std::vector<int>& earliest,
                  std::vector<int>& latest) {
  earliest.resize(inst.n());
  latest.resize(inst.n());
  for (int j = 0; j < inst.n(); ++j) {
    earliest[j] = inst.chain_to(j);
    latest[j] = T - inst.chain_from(j) + 1;
  }
}

bool feasible_K(const Instance& inst, int T, const lp::SolveLimits& lim) {
  const int n = inst.n();
  if (n == 0) return true;
  if (T < 1) return false;
  if (static_cast<long>(n) > static_cast<long>(inst.m()) * T) return false;
  std::vector<int> earliest, latest;
  slot_windows(inst, T, earliest, latest);
  for (int j = 0; j < n; ++j)
    if (earliest[j] > latest[j]) return false;

  LPModel model;
  for (int j = 0; j < n; ++j)
    for (int t = 1; t <= T; ++t) {
      bool inside = earliest[j] <= t && t <= latest[j];
      model.add_var(Rat(0), inside ? Rat(1) : Rat(0));
    }
  for (auto& r : base_rows(inst, T, PrecRows::Reduction))
    model.rows.push_back(std::move(r));
  auto res = lp::solve_feasibility(model, lim);
  if (res.status == lp::LPStatus::Feasible) return true;
  if (res.status == lp::LPStatus::Infeasible) return false;
  throw lp::LPResourceError("K(T) feasibility hit a resource limit");
}

int min_feasible_T(const Instance& inst, int lo, int hi,
                   const lp::SolveLimits& lim) {
  if (lo > hi) throw std::invalid_argument("empty horizon range");
  if (!feasible_K(inst, hi, lim))
    throw std::runtime_error("contract violation: K(hi) is infeasible");
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (feasible_K(inst, mid, lim))
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

}  // namespace sched::relax
