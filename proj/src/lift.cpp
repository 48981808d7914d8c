#include "sched/lift.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace sched::lift {

namespace {

Subset sorted_union(const Subset& a, const Subset& b) {
  Subset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

Subset with_elem(const Subset& a, int v) {
  Subset out;
  out.reserve(a.size() + 1);
  bool placed = false;
  for (int x : a) {
    if (!placed && v < x) {
      out.push_back(v);
      placed = true;
    }
    if (x == v) placed = true;
    out.push_back(x);
  }
  if (!placed) out.push_back(v);
  return out;
}

}  // namespace

Rat HierarchyVector::get(Subset s) const {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  Subset canon;
  canon.reserve(s.size());
  for (int v : s) {
    if (one_set.count(v)) continue;
    if (zero_set.count(v)) return Rat(0);
    canon.push_back(v);
  }
  if (static_cast<int>(canon.size()) > cap)
    throw IncompleteVectorError("subset of size " +
                                std::to_string(canon.size()) +
                                " beyond stored cap " + std::to_string(cap));
  if (canon.empty()) return Rat(1);
  auto it = values.find(canon);
  return it == values.end() ? Rat(0) : it->second;
}

Rat HierarchyVector::y_interval(int j, const Interval& I) const {
  Rat s(0);
  for (int t = std::max(1, I.lo); t <= std::min(T, I.hi); ++t) s += y(j, t);
  return s;
}

std::vector<int> HierarchyVector::supp(int j) const {
  std::vector<int> out;
  for (int t = 1; t <= T; ++t)
    if (sgn(y(j, t)) > 0) out.push_back(t);
  return out;
}

Interval HierarchyVector::supp_span(int j) const {
  auto s = supp(j);
  if (s.empty()) throw std::runtime_error("job has empty support");
  return {s.front(), s.back()};
}

HierarchyVector HierarchyVector::convex_combine(const HierarchyVector& a,
                                                const Rat& wa,
                                                const HierarchyVector& b,
                                                const Rat& wb) {
  if (a.T != b.T || a.inst != b.inst)
    throw std::invalid_argument("mixing vectors over different instances");
  if (wa + wb != 1 || sgn(wa) < 0 || sgn(wb) < 0)
    throw std::invalid_argument("weights must be a convex combination");
  HierarchyVector out;
  out.T = a.T;
  out.inst = a.inst;
  out.level = std::min(a.level, b.level);
  out.budget_level = std::min(a.budget_level, b.budget_level);
  out.cap = std::min(a.cap, b.cap);
  std::set_intersection(a.zero_set.begin(), a.zero_set.end(),
                        b.zero_set.begin(), b.zero_set.end(),
                        std::inserter(out.zero_set, out.zero_set.end()));
  std::set_intersection(a.one_set.begin(), a.one_set.end(), b.one_set.begin(),
                        b.one_set.end(),
                        std::inserter(out.one_set, out.one_set.end()));
  std::unordered_map<Subset, Rat, SubsetHash> keys;
  auto collect = [&](const HierarchyVector& v) {
    for (const auto& [k, q] : v.values)
      if (static_cast<int>(k.size()) <= out.cap) keys[k] = 0;
  };
  collect(a);
  collect(b);
  for (auto& [k, q] : keys) {
    Rat val = wa * a.get(k) + wb * b.get(k);
    if (sgn(val) != 0) out.values[k] = val;
  }
  return out;
}

void HierarchyVector::dump(std::ostream& out) const {
  std::vector<Subset> keys;
  keys.reserve(values.size());
  for (const auto& [k, q] : values) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const Subset& a, const Subset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (const auto& k : keys) {
    out << "{";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) out << ",";
      out << "(" << var_job(k[i]) << "," << var_slot(k[i]) << ")";
    }
    out << "} = " << rat_to_string(values.at(k)) << "\n";
  }
}

// ---------------------------------------------------------------------------
// Presolve and subset universe

namespace {

struct Presolve {
  int n = 0, m = 1, T = 0, r = 0, cap = 1;
  std::vector<char> zero, one;  // per global var id
  std::vector<int> free_vars;   // sorted global ids
  bool infeasible = false;
};

Presolve presolve(const Instance& inst, int T, int r, const Fixings& fx) {
  Presolve ps;
  ps.n = inst.n();
  ps.m = inst.m();
  ps.T = T;
  ps.r = r;
  ps.cap = r + 1;
  const int N = ps.n * T;
  ps.zero.assign(N, 0);
  ps.one.assign(N, 0);

  std::vector<int> earliest, latest;
  relax::slot_windows(inst, T, earliest, latest);
  for (int j = 0; j < ps.n; ++j) {
    if (earliest[j] > latest[j]) {
      ps.infeasible = true;
      return ps;
    }
    for (int t = 1; t <= T; ++t)
      if (t < earliest[j] || t > latest[j]) ps.zero[j * T + (t - 1)] = 1;
  }
  for (int v : fx.zeros) ps.zero[v] = 1;
  std::vector<int> ones_at_slot(T + 1, 0);
  for (int v : fx.ones) {
    if (ps.zero[v]) {
      ps.infeasible = true;
      return ps;
    }
    if (ps.one[v]) continue;
    ps.one[v] = 1;
    int j = v / T, t = v % T + 1;
    if (++ones_at_slot[t] > ps.m) {
      ps.infeasible = true;
      return ps;
    }
    for (int u = 1; u <= T; ++u)
      if (u != t) {
        int w = j * T + (u - 1);
        if (ps.one[w]) {
          ps.infeasible = true;
          return ps;
        }
        ps.zero[w] = 1;
      }
    // A pinned slot clips the feasible slots of related jobs.
    for (int j2 = 0; j2 < ps.n; ++j2) {
      if (inst.before(j, j2))
        for (int u = 1; u <= t; ++u) ps.zero[j2 * T + (u - 1)] = 1;
      if (inst.before(j2, j))
        for (int u = t; u <= T; ++u) ps.zero[j2 * T + (u - 1)] = 1;
    }
  }
  for (int v : fx.ones)
    if (ps.zero[v]) {
      ps.infeasible = true;
      return ps;
    }
  for (int v = 0; v < N; ++v)
    if (!ps.zero[v] && !ps.one[v]) ps.free_vars.push_back(v);
  return ps;
}

// Pairwise exclusions valid at lift level >= 1: one job in two slots,
// precedence-violating placements, and per-slot packing beyond capacity
// (the latter checked subset-wide during enumeration).
struct Compat {
  const Instance* inst = nullptr;
  int T = 0, m = 1;
  std::vector<int> ones_per_slot;  // from pins

  bool pair_ok(int u, int v) const {
    int ju = u / T, tu = u % T + 1;
    int jv = v / T, tv = v % T + 1;
    if (ju == jv) return tu == tv;
    if (inst->before(ju, jv) && tu >= tv) return false;
    if (inst->before(jv, ju) && tv >= tu) return false;
    return true;
  }

  bool subset_ok(const Subset& s) const {
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t k = i + 1; k < s.size(); ++k)
        if (!pair_ok(s[i], s[k])) return false;
    std::map<int, int> per_slot;
    for (int v : s) per_slot[v % T + 1]++;
    for (auto [t, c] : per_slot)
      if (c + ones_per_slot[t] > m) return false;
    return true;
  }
};

// Folds pinned variables out of base rows: terms on free variables only,
// constants moved to the right-hand side. Returns false when a row
// becomes unsatisfiable.
bool fold_rows(const std::vector<LPModel::Row>& raw, const Presolve& ps,
               std::vector<LPModel::Row>& out) {
  for (const auto& r : raw) {
    LPModel::Row f;
    f.rel = r.rel;
    f.rhs = r.rhs;
    for (const auto& [v, c] : r.terms) {
      if (ps.zero[v]) continue;
      if (ps.one[v]) {
        f.rhs -= c;
        continue;
      }
      f.terms.emplace_back(v, c);
    }
    if (f.terms.empty()) {
      bool ok = f.rel == lp::Rel::Le   ? sgn(f.rhs) >= 0
                : f.rel == lp::Rel::Ge ? sgn(f.rhs) <= 0
                                       : sgn(f.rhs) == 0;
      if (!ok) return false;
      continue;
    }
    out.push_back(std::move(f));
  }
  return true;
}

// ---------------------------------------------------------------------------
// Lifted-constraint scan shared by the solver and the verifier.

struct LiftedId {
  enum Kind { KRow, BoundLo, BoundHi } kind;
  int idx;  // row index or variable id
  Subset U, V;
};

using Getter = std::function<Rat(const Subset&)>;

// Enumerates multiplier sets over `universe` and reports constraints the
// getter violates. Bound constraints are checked for every universe
// variable; variables outside the universe carry no mass, so their
// lifted constraints reduce to enumerated ones.
template <typename Emit>
void scan_lifted(const Getter& get, const std::vector<LPModel::Row>& rows,
                 const std::vector<int>& universe, int r, Emit&& emit) {
  const int un = static_cast<int>(universe.size());
  std::vector<std::pair<Subset, Subset>> multipliers;
  multipliers.push_back({{}, {}});
  // Sizes 1..r, each support subset split into (U, V) in every way.
  std::vector<int> idxs;
  if (r > 0) {
    // depth-first over supports of size 1..r
    auto rec = [&](auto&& self, int start, int depth) -> void {
      for (int i = start; i < un; ++i) {
        idxs.push_back(i);
        int sz = static_cast<int>(idxs.size());
        for (int mask = 0; mask < (1 << sz); ++mask) {
          Subset U, V;
          for (int b = 0; b < sz; ++b)
            (mask >> b & 1 ? V : U).push_back(universe[idxs[b]]);
          multipliers.push_back({std::move(U), std::move(V)});
        }
        if (depth + 1 < r) self(self, i + 1, depth + 1);
        idxs.pop_back();
      }
    };
    rec(rec, 0, 0);
  }

  for (const auto& [U, V] : multipliers) {
    // Signed mass mu and conditional marginals g(v).
    const int vs = static_cast<int>(V.size());
    Rat mu(0);
    std::vector<std::pair<Subset, int>> wsets;  // (U u W, sign)
    for (int mask = 0; mask < (1 << vs); ++mask) {
      Subset base = U;
      int sign = 1;
      for (int b = 0; b < vs; ++b)
        if (mask >> b & 1) {
          base = with_elem(base, V[b]);
          sign = -sign;
        }
      mu += sign * get(base);
      wsets.emplace_back(std::move(base), sign);
    }
    std::unordered_map<int, Rat> gmemo;
    auto g = [&](int v) -> const Rat& {
      auto it = gmemo.find(v);
      if (it != gmemo.end()) return it->second;
      Rat s(0);
      for (const auto& [base, sign] : wsets) s += sign * get(with_elem(base, v));
      return gmemo.emplace(v, std::move(s)).first->second;
    };
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      const auto& row = rows[ri];
      Rat lhs(0);
      for (const auto& [v, c] : row.terms) lhs += c * g(v);
      Rat rhs = row.rhs * mu;
      bool ok = row.rel == lp::Rel::Le   ? lhs <= rhs
                : row.rel == lp::Rel::Ge ? lhs >= rhs
                                         : lhs == rhs;
      if (!ok &&
          !emit(LiftedId{LiftedId::KRow, static_cast<int>(ri), U, V}))
        return;
    }
    for (int v : universe) {
      if (sgn(g(v)) < 0 && !emit(LiftedId{LiftedId::BoundLo, v, U, V})) return;
      if (mu - g(v) < 0 && !emit(LiftedId{LiftedId::BoundHi, v, U, V})) return;
    }
  }
}

// Expands a lifted constraint into master-LP columns. Subsets without a
// column are structural zeros and drop out.
LPModel::Row materialize(const LiftedId& c, const std::vector<LPModel::Row>& rows,
                         const std::unordered_map<Subset, int, SubsetHash>& col_of) {
  std::map<int, Rat> coef;  // column -> coefficient
  Rat constant(0);          // contribution of y_empty
  auto addterm = [&](const Subset& key, const Rat& c0) {
    if (key.empty()) {
      constant += c0;
      return;
    }
    auto it = col_of.find(key);
    if (it == col_of.end()) return;
    coef[it->second] += c0;
  };
  const int vs = static_cast<int>(c.V.size());
  lp::Rel rel = lp::Rel::Ge;
  for (int mask = 0; mask < (1 << vs); ++mask) {
    Subset base = c.U;
    int sign = 1;
    for (int b = 0; b < vs; ++b)
      if (mask >> b & 1) {
        base = with_elem(base, c.V[b]);
        sign = -sign;
      }
    if (c.kind == LiftedId::KRow) {
      const auto& row = rows[c.idx];
      rel = row.rel;
      for (const auto& [v, cf] : row.terms)
        addterm(with_elem(base, v), sign * cf);
      addterm(base, Rat(-sign) * row.rhs);
    } else if (c.kind == LiftedId::BoundLo) {
      addterm(with_elem(base, c.idx), Rat(sign));
    } else {
      addterm(base, Rat(sign));
      addterm(with_elem(base, c.idx), Rat(-sign));
    }
  }
  LPModel::Row out;
  for (auto& [col, cf] : coef)
    if (sgn(cf) != 0) out.terms.emplace_back(col, cf);
  out.rel = rel;
  out.rhs = -constant;
  return out;
}

}  // namespace

std::optional<HierarchyVector> solve_lift(
    const std::shared_ptr<const Instance>& inst, int T, int r,
    const Fixings& fixings, LiftContext& ctx) {
  if (T < 1) throw std::invalid_argument("horizon must be >= 1");
  if (r < 0) throw std::invalid_argument("negative level");
  ctx.stats.solves++;
  Presolve ps = presolve(*inst, T, r, fixings);

  HierarchyVector out;
  out.level = r;
  out.budget_level = r;
  out.cap = r + 1;
  out.T = T;
  out.inst = inst;
  out.zero_set.insert(fixings.zeros.begin(), fixings.zeros.end());
  out.one_set.insert(fixings.ones.begin(), fixings.ones.end());
  if (ps.infeasible) return std::nullopt;
  if (inst->n() == 0) return out;

  Compat compat;
  compat.inst = inst.get();
  compat.T = T;
  compat.m = inst->m();
  compat.ones_per_slot.assign(T + 1, 0);
  for (int v = 0; v < ps.n * T; ++v)
    if (ps.one[v]) compat.ones_per_slot[v % T + 1]++;

  // Subset universe: compatible subsets of free variables up to size r+1.
  std::vector<Subset> cols;
  std::unordered_map<Subset, int, SubsetHash> col_of;
  {
    Subset cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (!cur.empty()) {
        if (cols.size() >= ctx.opts.max_subsets)
          throw LiftResourceError("subset universe exceeds cap");
        col_of.emplace(cur, static_cast<int>(cols.size()));
        cols.push_back(cur);
      }
      if (cur.size() == static_cast<std::size_t>(ps.cap)) return;
      for (std::size_t i = start; i < ps.free_vars.size(); ++i) {
        int v = ps.free_vars[i];
        bool ok = true;
        for (int u : cur)
          if (!compat.pair_ok(u, v)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        cur.push_back(v);
        if (compat.subset_ok(cur)) self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }

  std::vector<LPModel::Row> rows;
  if (!fold_rows(relax::base_rows(*inst, T, relax::PrecRows::Reduction), ps,
                 rows))
    return std::nullopt;

  LPModel seed;
  for (std::size_t c = 0; c < cols.size(); ++c) seed.add_var(Rat(0), Rat(1));
  for (const auto& row : rows) {
    std::vector<std::pair<int, Rat>> terms;
    for (const auto& [v, c] : row.terms) {
      auto it = col_of.find(Subset{v});
      if (it != col_of.end()) terms.emplace_back(it->second, c);
    }
    seed.add_row(std::move(terms), row.rel, row.rhs);
  }
  if (r >= 1 && ctx.opts.seed_singleton_sums &&
      ps.free_vars.size() >= 20) {
    // Conditional job sums, the single-multiplier lifts of the per-job
    // assignment rows: sum_t y_{(j,t),u} = y_u. One-pinned slots fold to
    // y_u and structurally-zero pairs drop.
    for (int u : ps.free_vars) {
      for (int j = 0; j < ps.n; ++j) {
        std::map<int, Rat> coef;
        for (int t = 1; t <= T; ++t) {
          int v = j * T + (t - 1);
          if (ps.zero[v]) continue;
          Subset key =
              ps.one[v] || v == u ? Subset{u} : sorted_union({u}, {v});
          auto it = col_of.find(key);
          if (it != col_of.end()) coef[it->second] += 1;
        }
        auto itu = col_of.find(Subset{u});
        if (itu != col_of.end()) coef[itu->second] -= 1;
        std::vector<std::pair<int, Rat>> terms;
        for (auto& [c2, q] : coef)
          if (sgn(q) != 0) terms.emplace_back(c2, q);
        if (!terms.empty()) seed.add_row(std::move(terms), lp::Rel::Eq, Rat(0));
      }
    }
  }
  lp::IncrementalSolver master(std::move(seed), ctx.opts.lp_limits);

  for (int round = 0; round < ctx.opts.max_rounds; ++round) {
    auto st = master.solve();
    if (ctx.opts.trace)
      std::fprintf(stderr, "[lift] round %d rows=%zu cols=%zu pivots=%llu %s\n",
                   round, master.model().rows.size(), cols.size(),
                   static_cast<unsigned long long>(master.pivots()),
                   st == lp::LPStatus::Feasible     ? "feasible"
                   : st == lp::LPStatus::Infeasible ? "INFEASIBLE"
                                                    : "limit");
    if (st == lp::LPStatus::Infeasible) return std::nullopt;
    if (st != lp::LPStatus::Feasible)
      throw LiftResourceError("master solve hit a resource limit");
    const std::vector<Rat>& point = master.point();

    Getter get = [&](const Subset& s) -> Rat {
      if (s.empty()) return Rat(1);
      auto it = col_of.find(s);
      return it == col_of.end() ? Rat(0) : point[it->second];
    };
    std::vector<int> universe;
    {
      std::set<int> touched;
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (sgn(point[c]) != 0) touched.insert(cols[c].begin(), cols[c].end());
      universe.assign(touched.begin(), touched.end());
    }
    std::vector<LiftedId> found;
    scan_lifted(get, rows, universe, r, [&](const LiftedId& id) {
      found.push_back(id);
      return static_cast<int>(found.size()) < ctx.opts.scan_batch;
    });
    if (found.empty()) {
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (sgn(point[c]) != 0) out.values.emplace(cols[c], point[c]);
      return out;
    }
    for (const auto& id : found) {
      LPModel::Row row = materialize(id, rows, col_of);
      master.add_row(std::move(row.terms), row.rel, row.rhs);
    }
  }
  throw LiftResourceError("constraint generation did not settle");
}

std::optional<std::string> verify_lift(const HierarchyVector& vec, int r) {
  if (vec.cap < r + 1)
    throw IncompleteVectorError("vector cap below requested level");
  auto rows = relax::base_rows(*vec.inst, vec.T, relax::PrecRows::Closure);
  std::set<int> uni(vec.one_set.begin(), vec.one_set.end());
  for (const auto& [k, q] : vec.values)
    if (sgn(q) != 0) uni.insert(k.begin(), k.end());
  std::vector<int> universe(uni.begin(), uni.end());
  Getter get = [&](const Subset& s) { return vec.get(s); };
  std::optional<std::string> fail;
  scan_lifted(get, rows, universe, r, [&](const LiftedId& id) {
    std::ostringstream os;
    os << (id.kind == LiftedId::KRow      ? "row "
           : id.kind == LiftedId::BoundLo ? "lower bound of var "
                                          : "upper bound of var ")
       << id.idx << " with |U|=" << id.U.size() << " |V|=" << id.V.size();
    fail = os.str();
    return false;
  });
  return fail;
}

namespace {

HierarchyVector resolve_with(const HierarchyVector& vec, int var, int value,
                             LiftContext& ctx) {
  ctx.stats.resolves++;
  Fixings fx;
  fx.zeros.assign(vec.zero_set.begin(), vec.zero_set.end());
  fx.ones.assign(vec.one_set.begin(), vec.one_set.end());
  if (value == 1)
    fx.ones.push_back(var);
  else
    fx.zeros.push_back(var);
  // Pin every base variable that already vanished so supports only shrink.
  for (int j = 0; j < vec.inst->n(); ++j)
    for (int t = 1; t <= vec.T; ++t) {
      int v = vec.var_id(j, t);
      if (v == var || vec.one_set.count(v) || vec.zero_set.count(v)) continue;
      if (sgn(vec.y(j, t)) == 0) fx.zeros.push_back(v);
    }
  auto nv = solve_lift(vec.inst, vec.T, vec.budget_level, fx, ctx);
  if (!nv)
    throw ConditioningError("re-solve with accumulated fixings is infeasible",
                            var, value);
  return *nv;
}

}  // namespace

HierarchyVector condition(const HierarchyVector& vec, int var, int value,
                          LiftContext& ctx) {
  Rat yv = vec.get({var});
  if (value == 1 && yv == 1) {
    HierarchyVector out = vec;
    out.one_set.insert(var);
    // Entries with and without the certain variable agree, keep either.
    std::unordered_map<Subset, Rat, SubsetHash> clean;
    for (const auto& [k, q] : out.values) {
      Subset k2;
      for (int v : k)
        if (v != var) k2.push_back(v);
      if (!k2.empty()) clean[k2] = q;
    }
    out.values = std::move(clean);
    return out;
  }
  if (value == 0 && sgn(yv) == 0) {
    HierarchyVector out = vec;
    out.zero_set.insert(var);
    std::unordered_map<Subset, Rat, SubsetHash> clean;
    for (const auto& [k, q] : out.values)
      if (std::find(k.begin(), k.end(), var) == k.end()) clean[k] = q;
    out.values = std::move(clean);
    return out;
  }
  if (value == 1 && sgn(yv) == 0)
    throw ConditioningError("conditioning x=1 on a zero variable", var, value);
  if (value == 0 && yv == 1)
    throw ConditioningError("conditioning x=0 on a one variable", var, value);

  if (vec.level < 1) return resolve_with(vec, var, value, ctx);

  ctx.stats.true_conditionings++;
  HierarchyVector z1, z0;
  for (auto* z : {&z1, &z0}) {
    z->level = vec.level - 1;
    z->budget_level = vec.budget_level;
    z->cap = vec.cap - 1;
    z->T = vec.T;
    z->inst = vec.inst;
    z->zero_set = vec.zero_set;
    z->one_set = vec.one_set;
  }
  z1.one_set.insert(var);
  z0.zero_set.insert(var);
  const Rat comp = Rat(1) - yv;
  for (const auto& [k, q] : vec.values) {
    bool has = std::find(k.begin(), k.end(), var) != k.end();
    if (has) {
      Subset k2;
      for (int v : k)
        if (v != var) k2.push_back(v);
      if (!k2.empty()) {
        Rat v1 = q / yv;
        if (sgn(v1) != 0) z1.values[k2] = v1;
      }
    } else {
      if (static_cast<int>(k.size()) <= z0.cap) {
        Rat kv1 = vec.get(with_elem(k, var));
        Rat v0 = (q - kv1) / comp;
        if (sgn(v0) != 0) z0.values[k] = v0;
        if (z1.values.find(k) == z1.values.end()) {
          Rat v1 = kv1 / yv;
          if (sgn(v1) != 0) z1.values[k] = v1;
        }
      }
    }
  }
  // Exact convex identity y = yv z1 + (1-yv) z0, entrywise.
  for (const auto& [k, q] : vec.values) {
    if (static_cast<int>(k.size()) > z0.cap) continue;
    if (std::find(k.begin(), k.end(), var) != k.end()) continue;
    if (yv * z1.get(k) + comp * z0.get(k) != q)
      throw std::logic_error("conditioning identity failed");
  }
  return value == 1 ? std::move(z1) : std::move(z0);
}

HierarchyVector condition_on_interval(const HierarchyVector& vec, int j,
                                      const Interval& I, LiftContext& ctx) {
  if (sgn(vec.y_interval(j, I)) == 0)
    throw ConditioningError("job has no mass in the target interval",
                            vec.var_id(j, std::max(1, I.lo)), 1);
  std::vector<int> targets;
  for (int t = 1; t <= vec.T; ++t)
    if (!I.contains(t) && sgn(vec.y(j, t)) > 0)
      targets.push_back(vec.var_id(j, t));
  if (targets.empty()) return vec;

  if (vec.level >= static_cast<int>(targets.size())) {
    HierarchyVector cur = vec;
    for (int v : targets) {
      if (sgn(cur.get({v})) == 0) {
        cur.zero_set.insert(v);
        continue;
      }
      cur = condition(cur, v, 0, ctx);
    }
    return cur;
  }
  // Level budget exhausted: one batched re-solve with all pins.
  ctx.stats.resolves++;
  Fixings fx;
  fx.zeros.assign(vec.zero_set.begin(), vec.zero_set.end());
  fx.ones.assign(vec.one_set.begin(), vec.one_set.end());
  for (int v : targets) fx.zeros.push_back(v);
  for (int jj = 0; jj < vec.inst->n(); ++jj)
    for (int t = 1; t <= vec.T; ++t) {
      int v = vec.var_id(jj, t);
      if (vec.one_set.count(v) || vec.zero_set.count(v)) continue;
      if (sgn(vec.y(jj, t)) == 0) fx.zeros.push_back(v);
    }
  auto nv = solve_lift(vec.inst, vec.T, vec.budget_level, fx, ctx);
  if (!nv)
    throw ConditioningError("interval conditioning re-solve is infeasible",
                            vec.var_id(j, I.lo), 1);
  return *nv;
}

int owner_level(const HierarchyVector& vec, const IntervalFamily& fam, int j) {
  if (vec.y_interval(j, fam.root()) != 1)
    throw std::runtime_error("family root does not own job " +
                             std::to_string(j));
  Interval span = vec.supp_span(j);
  return fam.deepest_containing(span.lo, span.hi);
}

JobSet jobs_at_level(const HierarchyVector& vec, const IntervalFamily& fam,
                     int l, const JobSet& among) {
  JobSet out(among.size());
  for (int j = among.find_first(); j != static_cast<int>(JobSet::npos);
       j = among.find_next(j))
    if (owner_level(vec, fam, j) == l) out.set(j);
  return out;
}

JobSet jobs_of_interval(const HierarchyVector& vec, const IntervalFamily& fam,
                        int level, int idx, const JobSet& among) {
  Interval I = fam.at(level, idx);
  JobSet out(among.size());
  for (int j = among.find_first(); j != static_cast<int>(JobSet::npos);
       j = among.find_next(j)) {
    if (owner_level(vec, fam, j) != level) continue;
    Interval span = vec.supp_span(j);
    if (I.contains(span)) out.set(j);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Moment-matrix PSD verification

PsdReport verify_moment_psd(const MomentGetter& get,
                            const std::vector<int>& vars, int r,
                            const std::vector<LPModel::Row>& ge_rows,
                            double tol) {
  std::vector<Subset> index;
  index.push_back({});
  {
    Subset cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
      if (static_cast<int>(cur.size()) == r) return;
      for (std::size_t i = start; i < vars.size(); ++i) {
        cur.push_back(vars[i]);
        index.push_back(cur);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  const int N = static_cast<int>(index.size());
  PsdReport rep;
  rep.min_eigenvalue = 1e300;
  auto check = [&](const std::string& name, auto&& entry) {
    Eigen::MatrixXd M(N, N);
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b) {
        double v = rat_to_double(entry(sorted_union(index[a], index[b])));
        M(a, b) = v;
        M(b, a) = v;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M,
                                                      Eigen::EigenvaluesOnly);
    double mn = N == 0 ? 0.0 : es.eigenvalues().minCoeff();
    if (mn < rep.min_eigenvalue) {
      rep.min_eigenvalue = mn;
      rep.witness = name;
    }
    if (mn < -tol) rep.ok = false;
  };
  check("moment", [&](const Subset& s) { return get(s); });
  for (std::size_t ri = 0; ri < ge_rows.size(); ++ri) {
    const auto& row = ge_rows[ri];
    if (row.rel != lp::Rel::Ge)
      throw std::invalid_argument("slack matrices need rows in >= form");
    check("slack row " + std::to_string(ri), [&](const Subset& s) {
      Rat v(0);
      for (const auto& [var, c] : row.terms) v += c * get(with_elem(s, var));
      v -= row.rhs * get(s);
      return v;
    });
  }
  if (rep.min_eigenvalue == 1e300) rep.min_eigenvalue = 0.0;
  return rep;
}

PsdReport verify_moment_psd(const HierarchyVector& vec, int r,
                            const std::vector<LPModel::Row>& ge_rows,
                            double tol) {
  std::vector<int> vars;
  for (int j = 0; j < vec.inst->n(); ++j)
    for (int t = 1; t <= vec.T; ++t)
      if (sgn(vec.y(j, t)) > 0) vars.push_back(vec.var_id(j, t));
  MomentGetter get = [&vec](const Subset& s) { return vec.get(s); };
  return verify_moment_psd(get, vars, r, ge_rows, tol);
}

MomentGetter integral_getter(const Instance& inst, const PartialSchedule& sched,
                             int T) {
  if (static_cast<int>(sched.slot.size()) != inst.n())
    throw std::invalid_argument("schedule does not match the instance");
  if (!sched.complete())
    throw std::invalid_argument("integral getter needs a complete schedule");
  std::vector<int> slot = sched.slot;
  return [slot, T](const Subset& s) -> Rat {
    for (int v : s) {
      int j = v / T, t = v % T + 1;
      if (slot[j] != t) return Rat(0);
    }
    return Rat(1);
  };
}

}  // namespace sched::lift
