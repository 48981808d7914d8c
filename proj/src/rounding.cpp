#include "sched/rounding.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace sched::rounding {

using lift::HierarchyVector;

int theoretical_k(const Rat& eps, int m, int rootT, int c1) {
  if (sgn(eps) <= 0) throw std::invalid_argument("epsilon must be positive");
  int z = log2_exact(rootT);
  if (z <= 1) return 1;
  // smallest k with k >= (c1 m / eps) log2(z), i.e. 2^{k p} >= z^{c1 m q}
  Int zpow;
  mpz_pow_ui(zpow.get_mpz_t(), Int(z).get_mpz_t(),
             static_cast<unsigned long>(c1) * m *
                 mpz_get_ui(eps.get_den().get_mpz_t()));
  Int num = eps.get_num();
  for (int k = 1;; ++k) {
    Int lhs = Int(1) << static_cast<unsigned>(k * mpz_get_ui(num.get_mpz_t()));
    if (lhs >= zpow) return k;
    if (k > 4096) throw std::runtime_error("theoretical k out of range");
  }
}

Rat theoretical_delta(const Rat& eps, int m, int rootT, int k) {
  int z = log2_exact(rootT);
  if (z < 1) z = 1;
  Int big = Int(1) << static_cast<unsigned>(2 * k * k);
  Rat den = Rat(8) * (k * k) * m * Rat(big) * z;
  return eps / den;
}

Rat theoretical_r_star(int k, const Rat& delta, int m, int Tstar) {
  if (sgn(delta) <= 0) throw std::invalid_argument("delta must be positive");
  int z = log2_exact(Tstar);
  Int big = Int(1) << static_cast<unsigned>(k * k);
  return Rat(z) * 2 * m * (k * k) * Rat(big) / delta;
}

EffectiveParams effective_params(const RoundingParams& params, int rootT,
                                 int m) {
  EffectiveParams eff;
  eff.epsilon = params.epsilon;
  eff.m = m;
  eff.rootT = rootT;
  eff.log2T = log2_exact(rootT);
  if (params.mode == ParamMode::Theoretical) {
    eff.k = theoretical_k(params.epsilon, m, rootT, params.c1);
    eff.delta = theoretical_delta(params.epsilon, m, rootT, eff.k);
  } else {
    eff.k = params.k;
    eff.delta = params.delta;
  }
  if (eff.k < 1) throw std::invalid_argument("k must be >= 1");
  if (sgn(eff.delta) <= 0) throw std::invalid_argument("delta must be > 0");
  return eff;
}

namespace {

// Bottom jobs fully assigned to I (supp inside I).
JobSet jobs_inside(const HierarchyVector& vec, const Interval& I,
                   const JobSet& among) {
  JobSet out(among.size());
  for (int j = among.find_first(); j != static_cast<int>(JobSet::npos);
       j = among.find_next(j))
    if (vec.y_interval(j, I) == 1) out.set(j);
  return out;
}

}  // namespace

BreakChainsResult break_chains(const HierarchyVector& y,
                               const IntervalFamily& fam,
                               const EffectiveParams& eff, const JobSet& jstar,
                               lift::LiftContext& ctx) {
  const Instance& inst = *y.inst;
  BreakChainsResult res{y, 0, 0};
  const int max_level =
      std::min(eff.k * eff.k, fam.depth()) - 1;  // leaves cannot split
  std::set<std::pair<long, int>> blacklist;      // (level*T+idx, job)
  const long guard =
      static_cast<long>(inst.n() + 1) * (fam.depth() + 2) + 1024;
  for (long iter = 0;; ++iter) {
    if (iter > guard) throw std::logic_error("chain breaking failed to settle");
    bool acted = false;
    for (int lev = 0; lev <= max_level && !acted; ++lev) {
      for (int idx = 0; idx < fam.count_at(lev) && !acted; ++idx) {
        Interval I = fam.at(lev, idx);
        JobSet owned =
            lift::jobs_of_interval(res.vec, fam, lev, idx, jstar);
        if (owned.none()) continue;
        Rat bound = eff.delta * I.len();
        if (Rat(inst.max_degree(owned)) <= bound) continue;
        // Highest-degree job not yet blacklisted, min-ID tie-break.
        int pick = -1, pick_deg = -1;
        for (int j = owned.find_first(); j != static_cast<int>(JobSet::npos);
             j = owned.find_next(j)) {
          if (blacklist.count({static_cast<long>(lev) * fam.count_at(fam.depth()) + idx, j}))
            continue;
          int deg = inst.degree_within(j, owned);
          if (deg > pick_deg) {
            pick = j;
            pick_deg = deg;
          }
        }
        if (pick < 0) continue;  // interval hopeless, leave it
        JobSet succ_in = inst.successors(pick) & owned;
        Rat plus = Rat(static_cast<long>(succ_in.count()) + 1);
        Interval left = fam.at(lev + 1, 2 * idx);
        Interval right = fam.at(lev + 1, 2 * idx + 1);
        bool to_right = 2 * plus >= bound;
        Interval first = to_right ? right : left;
        Interval second = to_right ? left : right;
        try {
          res.vec = lift::condition_on_interval(res.vec, pick, first, ctx);
          res.count++;
        } catch (const lift::ConditioningError&) {
          try {
            res.vec = lift::condition_on_interval(res.vec, pick, second, ctx);
            res.count++;
          } catch (const lift::ConditioningError&) {
            blacklist.insert({static_cast<long>(lev) * fam.count_at(fam.depth()) + idx, pick});
            res.skips++;
          }
        }
        acted = true;
      }
    }
    if (!acted) break;
  }
  return res;
}

MiddleChoice choose_middle_level(const HierarchyVector& y,
                                 const IntervalFamily& fam,
                                 const EffectiveParams& eff,
                                 const JobSet& jstar) {
  const int L = fam.depth();
  const int k = eff.k;
  const int n = static_cast<int>(jstar.size());
  std::vector<int> level_of(n, -1);
  for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
       j = jstar.find_next(j))
    level_of[j] = lift::owner_level(y, fam, j);

  MiddleChoice mc;
  mc.alpha.assign(k, 0);
  for (int j = 0; j < n; ++j) {
    if (level_of[j] < 0) continue;
    int i = level_of[j] / k;
    if (i < k) mc.alpha[i]++;
  }
  const Rat thr1 =
      eff.epsilon / (Rat(4) * std::max(1, eff.log2T)) * fam.root().len();
  int chosen = -1;
  long prefix = 0;
  for (int i = 0; i < k; ++i) {
    bool cond1 = Rat(mc.alpha[i]) <= thr1;
    bool cond2 = Rat(mc.alpha[i]) <= eff.epsilon / (2 * eff.m) * prefix;
    if (cond1 || cond2) {
      chosen = i;
      break;
    }
    prefix += mc.alpha[i];
  }
  if (chosen < 0) {
    mc.warned = true;
    chosen = 0;
    for (int i = 1; i < k; ++i)
      if (mc.alpha[i] < mc.alpha[chosen]) chosen = i;
  }
  mc.lstar = std::min((chosen + 1) * k, L);
  mc.top = JobSet(n);
  mc.middle = JobSet(n);
  mc.bottom = JobSet(n);
  for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
       j = jstar.find_next(j)) {
    int l = level_of[j];
    if (l >= mc.lstar)
      mc.bottom.set(j);
    else if (l >= mc.lstar - k)
      mc.middle.set(j);
    else
      mc.top.set(j);
  }
  return mc;
}

std::vector<TopJobWindow> compute_windows(const std::vector<int>& slot_of,
                                          const IntervalFamily& fam, int lstar,
                                          const JobSet& top,
                                          const Instance& inst) {
  const int p = 1 << lstar;
  std::vector<int> t = fam.boundaries(p);
  std::vector<TopJobWindow> out;
  for (int j = top.find_first(); j != static_cast<int>(JobSet::npos);
       j = top.find_next(j)) {
    int maxp = t[0];  // no predecessor constraint
    for (int u = inst.predecessors(j).find_first();
         u != static_cast<int>(JobSet::npos);
         u = inst.predecessors(j).find_next(u))
      if (slot_of[u] > 0) maxp = std::max(maxp, slot_of[u]);
    int mins = t[p] + 1;
    for (int u = inst.successors(j).find_first();
         u != static_cast<int>(JobSet::npos);
         u = inst.successors(j).find_next(u))
      if (slot_of[u] > 0) mins = std::min(mins, slot_of[u]);

    TopJobWindow w;
    w.job = j;
    int br = 0;
    while (br <= p && t[br] < maxp) ++br;  // smallest boundary >= max pred slot
    int bd = p;
    while (bd >= 0 && t[bd] > mins - 1) --bd;  // largest boundary <= min succ - 1
    w.ir = br + 1;
    w.id = bd;
    w.release = br <= p ? t[br] + 1 : t[p] + 1;
    w.deadline = bd >= 0 ? t[bd] : t[0];
    out.push_back(w);
  }
  return out;
}

TopAssignment top_matching(const std::vector<TopJobWindow>& windows,
                           const std::vector<int>& cap_interval, int p, int n,
                           const HierarchyVector* y, const IntervalFamily* fam,
                           int lstar, const std::vector<int>* cap_slot) {
  TopAssignment ta;
  ta.interval_of.assign(n, 0);
  ta.witness_slot.assign(n, 0);
  ta.discarded = JobSet(n);

  std::vector<std::vector<int>> matched(p + 1);  // interval -> jobs
  std::vector<char> vis(p + 1, 0);
  std::map<int, std::pair<int, int>> range;  // job -> [ilo, ihi]
  for (const auto& w : windows) {
    int ilo = std::max(1, w.ir), ihi = std::min(p, w.id);
    range[w.job] = {ilo, ihi};
  }
  auto augment = [&](auto&& self, int j) -> bool {
    auto [ilo, ihi] = range[j];
    for (int i = ilo; i <= ihi; ++i) {
      if (vis[i]) continue;
      vis[i] = 1;
      if (static_cast<int>(matched[i].size()) < cap_interval[i]) {
        matched[i].push_back(j);
        ta.interval_of[j] = i;
        return true;
      }
      for (std::size_t s = 0; s < matched[i].size(); ++s) {
        int j2 = matched[i][s];
        if (self(self, j2)) {
          matched[i][s] = j;
          ta.interval_of[j] = i;
          return true;
        }
      }
    }
    return false;
  };
  for (const auto& w : windows) {
    std::fill(vis.begin(), vis.end(), 0);
    if (!augment(augment, w.job)) ta.discarded.set(w.job);
  }

  if (y && fam) {
    // Does y certify a fractional matching over the widened edge set E+?
    ta.cert_fractional = true;
    for (const auto& w : windows) {
      Rat mass(0);
      int lo = std::max(1, w.ir - 1), hi = std::min(p, w.id + 1);
      for (int i = lo; i <= hi; ++i)
        mass += y->y_interval(w.job, fam->at(lstar, i - 1));
      if (mass != 1) {
        ta.cert_fractional = false;
        break;
      }
    }
  }
  if (fam && cap_slot) {
    // Capacity witness: matched jobs fill their interval's earliest free
    // slots (EDF re-derives the final positions).
    std::vector<int> residual = *cap_slot;
    for (int i = 1; i <= p; ++i) {
      Interval I = fam->at(lstar, i - 1);
      for (int j : matched[i]) {
        for (int t = I.lo; t <= I.hi; ++t)
          if (residual[t] > 0) {
            residual[t]--;
            ta.witness_slot[j] = t;
            break;
          }
        if (ta.witness_slot[j] == 0)
          throw std::logic_error("matching exceeded interval capacity");
      }
    }
  }
  return ta;
}

EdfResult edf_schedule(const std::vector<TopJobWindow>& jobs,
                       const Instance& inst, const std::vector<int>& cap_slot,
                       Interval span) {
  EdfResult er;
  er.slot_of.assign(inst.n(), 0);
  er.discarded = JobSet(inst.n());

  std::vector<int> rel(inst.n(), 0), dl(inst.n(), 0);
  JobSet in_set(inst.n());
  for (const auto& w : jobs) {
    in_set.set(w.job);
    rel[w.job] = w.release;
    dl[w.job] = w.deadline;
  }
  for (const auto& w : jobs)
    for (const auto& w2 : jobs)
      if (inst.before(w.job, w2.job) &&
          (rel[w.job] > rel[w2.job] || dl[w.job] > dl[w2.job]))
        throw WindowsInconsistent(w.job, w2.job);

  std::vector<int> order;
  for (const auto& w : jobs) order.push_back(w.job);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (dl[a] != dl[b]) return dl[a] < dl[b];
    return a < b;
  });

  JobSet handled(inst.n());  // scheduled or discarded
  for (int t = span.lo; t <= span.hi; ++t) {
    for (int c = 0; c < cap_slot[t]; ++c) {
      int pick = -1;
      for (int j : order) {
        if (handled.test(j)) continue;
        if (rel[j] > t || dl[j] < t) continue;
        bool ready = true;
        JobSet preds = inst.predecessors(j) & in_set;
        for (int u = preds.find_first(); u != static_cast<int>(JobSet::npos);
             u = preds.find_next(u))
          if (!er.discarded.test(u) &&
              (er.slot_of[u] == 0 || er.slot_of[u] >= t)) {
            ready = false;
            break;
          }
        if (ready) {
          pick = j;
          break;
        }
      }
      if (pick < 0) break;
      er.slot_of[pick] = t;
      handled.set(pick);
    }
    for (int j : order)
      if (!handled.test(j) && dl[j] == t) {
        er.discarded.set(j);
        handled.set(j);
      }
  }
  return er;
}

namespace {

NodeResult base_case(const HierarchyVector& y, Interval istar,
                     const JobSet& jstar, const RoundingParams& params,
                     lift::LiftContext& ctx, RoundingStats& stats) {
  const Instance& inst = *y.inst;
  const int n = inst.n();
  const int Tb = istar.len();
  NodeResult res;
  res.discarded = JobSet(n);

  if (params.base_case_by_conditioning) {
    // Condition x_{j,t} = 1 job by job until every kept job is integral.
    HierarchyVector cur = y;
    bool fallback = false;
    for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
         j = jstar.find_next(j)) {
      auto s = cur.supp(j);
      if (s.size() == 1) continue;
      bool done = false;
      for (int t : s) {
        if (sgn(cur.y(j, t)) == 0) continue;
        try {
          cur = lift::condition(cur, cur.var_id(j, t), 1, ctx);
          done = true;
          break;
        } catch (const lift::ConditioningError&) {
        }
      }
      if (!done) {
        res.discarded.set(j);
        fallback = true;
      }
    }
    for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
         j = jstar.find_next(j)) {
      if (res.discarded.test(j)) continue;
      auto s = cur.supp(j);
      if (s.size() != 1) throw std::logic_error("job left fractional");
      res.assign.emplace_back(j, s.front());
    }
    if (fallback) stats.base_case_fallbacks++;
    res.a = static_cast<long>(res.discarded.count());
    return res;
  }

  std::vector<int> jobs;
  for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
       j = jstar.find_next(j))
    jobs.push_back(j);
  bool fallback = false;
  auto drop_latest_deadline = [&]() {
    // Latest supp-max goes first; ties broken by the larger id.
    int best = -1, best_dl = -1;
    for (int j : jobs) {
      int dlj = y.supp(j).empty() ? istar.hi : y.supp_span(j).hi;
      if (dlj > best_dl || (dlj == best_dl && j > best)) {
        best = j;
        best_dl = dlj;
      }
    }
    jobs.erase(std::find(jobs.begin(), jobs.end(), best));
    res.discarded.set(best);
    fallback = true;
  };
  while (static_cast<long>(jobs.size()) >
         static_cast<long>(inst.m()) * Tb)
    drop_latest_deadline();

  ExactLimits base_limits = params.exact_limits;
  base_limits.max_jobs = 64;  // base intervals may hold up to m * |I*| jobs
  for (;;) {
    std::vector<int> back(n, -1);
    for (std::size_t i = 0; i < jobs.size(); ++i) back[jobs[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < jobs.size(); ++i)
      for (std::size_t l = 0; l < jobs.size(); ++l)
        if (i != l && inst.before(jobs[i], jobs[l]))
          edges.emplace_back(static_cast<int>(i), static_cast<int>(l));
    Instance sub =
        Instance::make(static_cast<int>(jobs.size()), inst.m(), edges);
    auto fr = feasible_within(sub, Tb, base_limits);
    if (fr.verdict == SearchVerdict::Yes) {
      for (std::size_t i = 0; i < jobs.size(); ++i)
        res.assign.emplace_back(jobs[i], fr.witness.slot[i] + istar.lo - 1);
      break;
    }
    if (jobs.empty()) break;
    drop_latest_deadline();
  }
  if (fallback) stats.base_case_fallbacks++;
  res.a = static_cast<long>(res.discarded.count());
  return res;
}

}  // namespace

NodeResult schedule_interval(const HierarchyVector& y, Interval istar,
                             const JobSet& jstar, const RoundingParams& params,
                             const EffectiveParams& eff, lift::LiftContext& ctx,
                             RoundingStats& stats, int depth) {
  const Instance& inst = *y.inst;
  const int n = inst.n();
  for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
       j = jstar.find_next(j))
    if (y.y_interval(j, istar) != 1)
      throw std::logic_error("job not fully assigned to the interval");

  const int Tb = istar.len();
  stats.recursion_nodes++;
  bool base = Tb <= 1;
  if (params.mode == ParamMode::Theoretical)
    base = base || log2_exact(Tb) <= eff.k * eff.k;
  else
    base = base || Tb <= params.base_case_threshold;
  if (base) return base_case(y, istar, jstar, params, ctx, stats);

  IntervalFamily fam = IntervalFamily::over(istar);

  // Step 1: reduce dependence.
  auto bc = break_chains(y, fam, eff, jstar, ctx);
  stats.conditionings += bc.count;
  stats.chain_break_skips += bc.skips;

  // Step 2: choose the middle block and discard it.
  auto mid = choose_middle_level(bc.vec, fam, eff, jstar);
  stats.middle_level_warning |= mid.warned;

  NodeResult res;
  res.discarded = mid.middle;
  res.c = static_cast<long>(mid.middle.count());

  // Step 3: recurse on each interval of level lstar.
  std::vector<int> slot_of(n, 0);
  for (int idx = 0; idx < fam.count_at(mid.lstar); ++idx) {
    Interval I = fam.at(mid.lstar, idx);
    JobSet ji = jobs_inside(bc.vec, I, mid.bottom);
    if (ji.none()) continue;
    NodeResult sub = schedule_interval(bc.vec, I, ji, params, eff, ctx, stats,
                                       depth + 1);
    res.a += static_cast<long>(sub.discarded.count());
    res.discarded |= sub.discarded;
    for (auto [j, s] : sub.assign) slot_of[j] = s;
  }

  // Step 4: insert the top jobs into the remaining capacity.
  stats.top_jobs_seen += static_cast<long>(mid.top.count());
  const int p = 1 << mid.lstar;
  auto windows = compute_windows(slot_of, fam, mid.lstar, mid.top, inst);
  std::vector<int> cap_slot(fam.root().hi + 1, 0);
  for (int t = istar.lo; t <= istar.hi; ++t) cap_slot[t] = inst.m();
  for (int j = 0; j < n; ++j)
    if (slot_of[j] > 0) cap_slot[slot_of[j]]--;
  std::vector<int> cap_interval(p + 1, 0);
  for (int i = 1; i <= p; ++i) {
    Interval I = fam.at(mid.lstar, i - 1);
    for (int t = I.lo; t <= I.hi; ++t) cap_interval[i] += cap_slot[t];
  }
  auto ta = top_matching(windows, cap_interval, p, n, &bc.vec, &fam,
                         mid.lstar, &cap_slot);
  res.discarded |= ta.discarded;
  res.b += static_cast<long>(ta.discarded.count());

  std::vector<TopJobWindow> matched;
  for (const auto& w : windows)
    if (!ta.discarded.test(w.job)) matched.push_back(w);
  auto er = edf_schedule(matched, inst, cap_slot, istar);
  res.discarded |= er.discarded;
  res.b += static_cast<long>(er.discarded.count());
  for (const auto& w : matched)
    if (er.slot_of[w.job] > 0) slot_of[w.job] = er.slot_of[w.job];

  for (int j = jstar.find_first(); j != static_cast<int>(JobSet::npos);
       j = jstar.find_next(j)) {
    if (res.discarded.test(j)) continue;
    if (slot_of[j] == 0) throw std::logic_error("job neither placed nor discarded");
    res.assign.emplace_back(j, slot_of[j]);
  }
  return res;
}

PartialSchedule insert_discarded(const PartialSchedule& sched,
                                 const JobSet& discarded,
                                 const Instance& inst) {
  PartialSchedule out = sched;
  for (int j = discarded.find_first(); j != static_cast<int>(JobSet::npos);
       j = discarded.find_next(j)) {
    int maxp = 0;
    for (int u = inst.predecessors(j).find_first();
         u != static_cast<int>(JobSet::npos);
         u = inst.predecessors(j).find_next(u))
      if (out.slot[u] > 0 && !out.discarded[u]) maxp = std::max(maxp, out.slot[u]);
    int mins = out.horizon + 1;
    for (int u = inst.successors(j).find_first();
         u != static_cast<int>(JobSet::npos);
         u = inst.successors(j).find_next(u))
      if (out.slot[u] > 0 && !out.discarded[u]) mins = std::min(mins, out.slot[u]);
    int tstar = mins - 1;  // latest admissible insertion point
    if (tstar > out.horizon) tstar = out.horizon;
    if (tstar < maxp)
      throw std::logic_error("no insertion point for discarded job " +
                             std::to_string(j));
    for (std::size_t u = 0; u < out.slot.size(); ++u)
      if (out.slot[u] > tstar) out.slot[u]++;
    out.slot[j] = tstar + 1;
    out.discarded[j] = 0;
    out.horizon++;
  }
  return out;
}

std::pair<PartialSchedule, RoundingStats> round_full(
    const Instance& inst, const RoundingParams& params) {
  RoundingStats stats;
  if (inst.n() == 0) {
    PartialSchedule empty = PartialSchedule::empty(0, 0);
    return {empty, stats};
  }
  auto base = std::make_shared<Instance>(inst);
  lift::LiftContext ctx;
  ctx.opts = params.lift_opts;

  // Least horizon with a feasible level-r lift, by binary search.
  int lo = std::max((inst.n() + inst.m() - 1) / inst.m(), inst.longest_chain());
  int hi = inst.n();
  auto probe = [&](int T) {
    return solve_lift(base, T, params.level, {}, ctx).has_value();
  };
  if (!probe(hi)) throw std::logic_error("lift infeasible at horizon n");
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (probe(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  const int That = hi;

  PaddedInstance padded = pad_to_power_of_two(inst, That);
  auto inst2 = std::make_shared<Instance>(padded.inst);
  const int T2 = padded.horizon;
  auto vec = solve_lift(inst2, T2, params.level, {}, ctx);
  if (!vec) throw std::logic_error("padded lift unexpectedly infeasible");

  EffectiveParams eff = effective_params(params, T2, inst2->m());
  NodeResult node = schedule_interval(*vec, {1, T2}, inst2->all_jobs(), params,
                                      eff, ctx, stats, 0);

  PartialSchedule ps = PartialSchedule::empty(inst2->n(), T2);
  for (auto [j, s] : node.assign) ps.slot[j] = s;
  for (int j = node.discarded.find_first(); j != static_cast<int>(JobSet::npos);
       j = node.discarded.find_next(j))
    ps.discarded[j] = 1;
  for (int j = 0; j < inst2->n(); ++j)
    if (ps.slot[j] == 0 && !ps.discarded[j])
      throw std::logic_error("silent discard detected");

  PartialSchedule full = insert_discarded(ps, node.discarded, *inst2);
  if (!full.complete()) throw std::logic_error("reinsertion left gaps");

  stats.T = T2;
  stats.makespan = full.horizon;
  stats.discard_recursive = node.a;
  stats.discard_matching_edf = node.b;
  stats.discard_middle = node.c;
  stats.resolves = ctx.stats.resolves;

  PartialSchedule out = PartialSchedule::empty(inst.n(), full.horizon);
  for (int j = 0; j < inst.n(); ++j) out.slot[j] = full.slot[j];
  return {out, stats};
}

}  // namespace sched::rounding
