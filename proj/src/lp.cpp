#include "sched/lp.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

namespace sched::lp {

int LPModel::add_var(const Rat& lo_, std::optional<Rat> hi_) {
  Rat l = lo_;
  l.canonicalize();
  if (hi_) hi_->canonicalize();
  if (hi_ && *hi_ < l) throw std::invalid_argument("empty variable bounds");
  lo.push_back(std::move(l));
  hi.push_back(std::move(hi_));
  return num_vars() - 1;
}

void LPModel::add_row(std::vector<std::pair<int, Rat>> terms, Rel rel,
                      const Rat& rhs) {
  for (auto& [v, c] : terms) {
    if (v < 0 || v >= num_vars()) throw std::invalid_argument("bad var index");
    c.canonicalize();
  }
  Row r;
  r.terms = std::move(terms);
  r.rel = rel;
  r.rhs = rhs;
  r.rhs.canonicalize();
  rows.push_back(std::move(r));
}

std::size_t LPModel::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& r : rows)
    for (const auto& [v, c] : r.terms) nz += sgn(c) != 0;
  return nz;
}

std::optional<std::string> LPModel::violation(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != num_vars()) return "dimension mismatch";
  for (int j = 0; j < num_vars(); ++j) {
    if (x[j] < lo[j]) return "lower bound of x" + std::to_string(j);
    if (hi[j] && x[j] > *hi[j]) return "upper bound of x" + std::to_string(j);
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rat lhs(0);
    for (const auto& [v, c] : rows[i].terms) lhs += c * x[v];
    bool ok = rows[i].rel == Rel::Le   ? lhs <= rows[i].rhs
              : rows[i].rel == Rel::Ge ? lhs >= rows[i].rhs
                                       : lhs == rows[i].rhs;
    if (!ok) return "row " + std::to_string(i);
  }
  return std::nullopt;
}

void LPModel::dump(std::ostream& out) const {
  out << "model " << rows.size() << " " << num_vars() << "\n";
  for (int j = 0; j < num_vars(); ++j) {
    out << "var " << j << " " << rat_to_string(lo[j]) << " ";
    if (hi[j])
      out << rat_to_string(*hi[j]);
    else
      out << "inf";
    out << "\n";
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "row " << i << ":";
    bool first = true;
    for (const auto& [v, c] : rows[i].terms) {
      if (sgn(c) == 0) continue;
      out << (first ? " " : " + ") << rat_to_string(c) << " x" << v;
      first = false;
    }
    if (first) out << " 0";
    const char* rel = rows[i].rel == Rel::Le   ? "<="
                      : rows[i].rel == Rel::Ge ? ">="
                                               : "=";
    out << " " << rel << " " << rat_to_string(rows[i].rhs) << "\n";
  }
}

bool FarkasCertificate::valid(const LPModel& model) const {
  if (mu.size() != model.rows.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (model.rows[i].rel == Rel::Le && sgn(mu[i]) > 0) return false;
    if (model.rows[i].rel == Rel::Ge && sgn(mu[i]) < 0) return false;
  }
  // Combined valid inequality v'x >= rhs.
  std::vector<Rat> v(model.num_vars(), Rat(0));
  Rat rhs(0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (sgn(mu[i]) == 0) continue;
    for (const auto& [var, c] : model.rows[i].terms) v[var] += mu[i] * c;
    rhs += mu[i] * model.rows[i].rhs;
  }
  // Maximum of v'x over the variable box must fall strictly below rhs.
  Rat box_max(0);
  for (int j = 0; j < model.num_vars(); ++j) {
    int s = sgn(v[j]);
    if (s > 0) {
      if (!model.hi[j]) return false;  // unbounded direction, no contradiction
      box_max += v[j] * *model.hi[j];
    } else if (s < 0) {
      box_max += v[j] * model.lo[j];
    }
  }
  return box_max < rhs;
}

namespace {

enum class ColState : char { Lower, Upper, Basic };

// Persistent bounded-variable tableau simplex. Internal standard form:
// structurals shifted to lower bound 0, one slack per row (sigma = +1
// for <=, -1 for >=, a fixed [0,0] column for =), artificials where the
// slack cannot seed a feasible basis. Rows can be appended later; a
// warm phase one over the new artificials repairs feasibility.
struct Simplex {
  const SolveLimits limits;
  LPModel model;  // owned; appended rows land here too

  int ns = 0;  // structural columns
  int R = 0;
  int C = 0;
  std::vector<std::vector<Rat>> T;  // tableau, R x C
  std::vector<Rat> xB;              // basic value per row
  std::vector<Rat> d;               // reduced costs
  std::vector<Rat> up;              // per-column upper bound (lower is 0)
  std::vector<char> has_up;
  std::vector<int> basis;     // row -> col
  std::vector<int> row_of;    // col -> row (-1 when nonbasic)
  std::vector<ColState> state;
  std::vector<char> dead;     // retired artificials
  std::vector<char> is_art;
  std::vector<int> slack_of;  // row -> slack column
  std::vector<int> sigma;     // row -> slack sign in the model row
  std::vector<int> new_arts;  // artificials of the current repair
  std::uint64_t pivot_count = 0;
  bool solved_once = false;

  Simplex(LPModel m, const SolveLimits& lim) : limits(lim), model(std::move(m)) {
    ns = model.num_vars();
    for (int j = 0; j < ns; ++j) {
      Rat u(0);
      bool bounded = model.hi[j].has_value();
      if (bounded) u = *model.hi[j] - model.lo[j];
      add_col(u, bounded, false);
    }
    auto initial = std::move(model.rows);
    model.rows.clear();
    for (auto& row : initial) append_row(std::move(row));
  }

  void check_cells() const {
    std::size_t cells = static_cast<std::size_t>(R + 1) * (C + 1);
    if (cells > limits.max_cells)
      throw LPResourceError("tableau too large: " + std::to_string(cells) +
                            " cells");
  }

  int add_col(const Rat& u, bool bounded, bool artificial) {
    for (auto& row : T) row.push_back(Rat(0));
    up.push_back(u);
    has_up.push_back(bounded);
    state.push_back(ColState::Lower);
    dead.push_back(0);
    is_art.push_back(artificial);
    row_of.push_back(-1);
    d.push_back(Rat(0));
    return C++;
  }

  Rat col_value(int j) const {
    if (state[j] == ColState::Basic) return xB[row_of[j]];
    return state[j] == ColState::Upper ? up[j] : Rat(0);
  }

  // Appends one model row and seats a basic variable for it: the slack
  // when the current point satisfies the row, a fresh artificial (value
  // = violation) otherwise.
  void append_row(LPModel::Row row) {
    model.rows.push_back(row);
    Rat shifted_rhs = row.rhs;
    for (auto& [v, c] : row.terms) shifted_rhs -= c * model.lo[v];

    // Dense internal row over current columns, basics eliminated.
    std::vector<Rat> dense(C, Rat(0));
    Rat act(0);
    for (auto& [v, c] : row.terms) {
      if (sgn(c) == 0) continue;
      dense[v] += c;
      act += c * col_value(v);  // col_value is already lower-bound shifted
    }
    for (int j = 0; j < ns; ++j) {
      if (sgn(dense[j]) == 0 || state[j] != ColState::Basic) continue;
      Rat f = dense[j];
      const auto& prow = T[row_of[j]];
      for (int c2 = 0; c2 < C; ++c2)
        if (sgn(prow[c2]) != 0) dense[c2] -= f * prow[c2];
    }

    int sg = row.rel == Rel::Ge ? -1 : 1;
    bool eq = row.rel == Rel::Eq;
    int slack = add_col(Rat(0), eq, false);  // fixed [0,0] for equalities
    if (!eq) {
      up[slack] = 0;
      has_up[slack] = 0;  // [0, inf)
    }
    dense.push_back(Rat(0));

    // Internal row = flip * (model row + sigma*slack), flip chosen so the
    // seated basic column carries +1.
    Rat s0 = sg * (shifted_rhs - act);  // slack value satisfying the row
    int flip = sg;
    bool slack_ok = eq ? sgn(s0) == 0 : sgn(s0) >= 0;
    T.push_back(std::move(dense));
    slack_of.push_back(slack);
    sigma.push_back(sg);
    int r = R++;
    check_cells();
    T[r][slack] = 1;  // after multiplying the row by flip=sigma
    if (flip == -1)
      for (int c2 = 0; c2 < C; ++c2)
        if (c2 != slack && sgn(T[r][c2]) != 0) T[r][c2] = -T[r][c2];

    if (slack_ok) {
      basis.push_back(slack);
      row_of[slack] = r;
      state[slack] = ColState::Basic;
      xB.push_back(s0);
    } else {
      // Negate once more so the artificial sits at +|violation|.
      if (sgn(s0) < 0) {
        flip = -flip;
        for (int c2 = 0; c2 < C; ++c2)
          if (sgn(T[r][c2]) != 0) T[r][c2] = -T[r][c2];
        s0 = -s0;
      }
      int art = add_col(Rat(0), false, true);
      T[r][art] = 1;
      basis.push_back(art);
      row_of[art] = r;
      state[art] = ColState::Basic;
      xB.push_back(s0);
      new_arts.push_back(art);
    }
  }

  void seed_costs_phase1() {
    std::fill(d.begin(), d.end(), Rat(0));
    for (int a : new_arts) d[a] = 1;
    reduce_costs();
  }

  void seed_costs(const std::vector<Rat>& structural_cost) {
    std::fill(d.begin(), d.end(), Rat(0));
    for (int j = 0; j < ns && j < static_cast<int>(structural_cost.size()); ++j)
      d[j] = structural_cost[j];
    reduce_costs();
  }

  void reduce_costs() {
    for (int i = 0; i < R; ++i) {
      Rat cb = d[basis[i]];
      if (sgn(cb) == 0) continue;
      for (int j = 0; j < C; ++j)
        if (sgn(T[i][j]) != 0) d[j] -= cb * T[i][j];
      d[basis[i]] = 0;
    }
  }

  bool eligible(int j) const {
    if (state[j] == ColState::Basic || dead[j]) return false;
    if (has_up[j] && sgn(up[j]) == 0) return false;  // fixed column
    int s = sgn(d[j]);
    return (state[j] == ColState::Lower && s < 0) ||
           (state[j] == ColState::Upper && s > 0);
  }

  enum class StepStatus { Optimal, Unbounded, Limit };

  // Bland's rule: smallest eligible entering column; smallest basic
  // variable among the blocking rows.
  StepStatus run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < C; ++j)
        if (eligible(j)) {
          enter = j;
          break;
        }
      if (enter < 0) return StepStatus::Optimal;
      if (++pivot_count > limits.max_pivots) return StepStatus::Limit;

      const int s = state[enter] == ColState::Lower ? 1 : -1;
      bool have_limit = false;
      Rat best_t(0);
      int best_row = -1;
      bool leave_at_upper = false;
      for (int i = 0; i < R; ++i) {
        Rat eff = s * T[i][enter];
        int sg = sgn(eff);
        if (sg > 0) {
          Rat t = xB[i] / eff;
          if (!have_limit || t < best_t ||
              (t == best_t && best_row >= 0 && basis[i] < basis[best_row])) {
            have_limit = true;
            best_t = t;
            best_row = i;
            leave_at_upper = false;
          }
        } else if (sg < 0 && has_up[basis[i]]) {
          Rat t = (up[basis[i]] - xB[i]) / (-eff);
          if (!have_limit || t < best_t ||
              (t == best_t && best_row >= 0 && basis[i] < basis[best_row])) {
            have_limit = true;
            best_t = t;
            best_row = i;
            leave_at_upper = true;
          }
        }
      }
      if (has_up[enter] && (!have_limit || up[enter] <= best_t)) {
        const Rat t = up[enter];
        for (int i = 0; i < R; ++i)
          if (sgn(T[i][enter]) != 0) xB[i] -= s * t * T[i][enter];
        state[enter] =
            state[enter] == ColState::Lower ? ColState::Upper : ColState::Lower;
        continue;
      }
      if (!have_limit) return StepStatus::Unbounded;
      pivot(best_row, enter, s, best_t, leave_at_upper);
    }
  }

  void pivot(int p, int enter, int s, const Rat& t, bool leave_at_upper) {
    if (sgn(t) != 0)
      for (int i = 0; i < R; ++i)
        if (sgn(T[i][enter]) != 0) xB[i] -= s * t * T[i][enter];
    Rat v_enter =
        (state[enter] == ColState::Upper ? up[enter] : Rat(0)) + s * t;
    int leave = basis[p];
    state[leave] = leave_at_upper ? ColState::Upper : ColState::Lower;
    row_of[leave] = -1;
    if (is_art[leave]) dead[leave] = 1;  // artificials never re-enter
    state[enter] = ColState::Basic;
    row_of[enter] = p;
    basis[p] = enter;
    xB[p] = v_enter;

    Rat piv = T[p][enter];
    assert(sgn(piv) != 0);
    if (piv != 1)
      for (int j = 0; j < C; ++j)
        if (sgn(T[p][j]) != 0) T[p][j] /= piv;
    for (int i = 0; i < R; ++i) {
      if (i == p) continue;
      Rat f = T[i][enter];
      if (sgn(f) == 0) continue;
      for (int j = 0; j < C; ++j)
        if (sgn(T[p][j]) != 0) T[i][j] -= f * T[p][j];
    }
    Rat f = d[enter];
    if (sgn(f) != 0)
      for (int j = 0; j < C; ++j)
        if (sgn(T[p][j]) != 0) d[j] -= f * T[p][j];
  }

  Rat phase1_objective() const {
    Rat z(0);
    for (int a : new_arts)
      if (state[a] == ColState::Basic) z += xB[row_of[a]];
    return z;
  }

  void retire_artificials() {
    for (int a : new_arts) {
      if (state[a] == ColState::Basic) {
        int i = row_of[a];
        assert(sgn(xB[i]) == 0);
        for (int j = 0; j < C; ++j) {
          if (is_art[j] || state[j] == ColState::Basic || sgn(T[i][j]) == 0)
            continue;
          if (has_up[j] && sgn(up[j]) == 0) continue;
          pivot(i, j, 1, Rat(0), false);
          break;
        }
        // Still basic: the row is redundant; the artificial idles at 0.
      }
      dead[a] = 1;
    }
    new_arts.clear();
  }

  // Phase one over the pending artificials. Returns Feasible/Infeasible
  // or ResourceLimit; on Feasible the artificials are retired.
  LPStatus repair() {
    if (new_arts.empty() && solved_once) return LPStatus::Feasible;
    seed_costs_phase1();
    auto st = run();
    solved_once = true;
    if (st == StepStatus::Limit) return LPStatus::ResourceLimit;
    assert(st == StepStatus::Optimal);
    if (sgn(phase1_objective()) > 0) return LPStatus::Infeasible;
    retire_artificials();
    return LPStatus::Feasible;
  }

  std::vector<Rat> extract() const {
    std::vector<Rat> x(ns);
    for (int j = 0; j < ns; ++j) x[j] = model.lo[j] + col_value(j);
    return x;
  }

  FarkasCertificate farkas() const {
    // Every row carries a slack column whose internal coefficient is the
    // row's cumulative flip times sigma; the flips cancel and the model
    // multiplier is -d_slack / sigma.
    FarkasCertificate cert;
    cert.mu.assign(R, Rat(0));
    for (int i = 0; i < R; ++i) cert.mu[i] = -d[slack_of[i]] / sigma[i];
    return cert;
  }
};

}  // namespace

struct IncrementalSolver::Impl {
  Simplex sx;
  LPStatus last = LPStatus::ResourceLimit;
  std::vector<Rat> x;
  Impl(LPModel m, const SolveLimits& lim) : sx(std::move(m), lim) {}
};

IncrementalSolver::IncrementalSolver(LPModel base, const SolveLimits& limits)
    : impl_(std::make_unique<Impl>(std::move(base), limits)) {}
IncrementalSolver::~IncrementalSolver() = default;
IncrementalSolver::IncrementalSolver(IncrementalSolver&&) noexcept = default;
IncrementalSolver& IncrementalSolver::operator=(IncrementalSolver&&) noexcept =
    default;

void IncrementalSolver::add_row(std::vector<std::pair<int, Rat>> terms, Rel rel,
                                const Rat& rhs) {
  LPModel::Row row;
  for (auto& [v, c] : terms) c.canonicalize();
  row.terms = std::move(terms);
  row.rel = rel;
  row.rhs = rhs;
  row.rhs.canonicalize();
  if (impl_->sx.model.nonzeros() > impl_->sx.limits.max_nonzeros)
    throw LPResourceError("model exceeds nonzero cap");
  impl_->sx.append_row(std::move(row));
}

LPStatus IncrementalSolver::solve() {
  impl_->last = impl_->sx.repair();
  if (impl_->last == LPStatus::Feasible) {
    impl_->x = impl_->sx.extract();
    assert(impl_->sx.model.check_point(impl_->x));
  }
  return impl_->last;
}

const std::vector<Rat>& IncrementalSolver::point() const { return impl_->x; }

FarkasCertificate IncrementalSolver::farkas() const {
  FarkasCertificate cert = impl_->sx.farkas();
  assert(cert.valid(impl_->sx.model));
  return cert;
}

const LPModel& IncrementalSolver::model() const { return impl_->sx.model; }

std::uint64_t IncrementalSolver::pivots() const {
  return impl_->sx.pivot_count;
}

namespace {

LPResult run_solver(const LPModel& model, const std::vector<Rat>* cost,
                    const SolveLimits& limits) {
  LPResult res;
  if (model.nonzeros() > limits.max_nonzeros)
    throw LPResourceError("model exceeds nonzero cap: " +
                          std::to_string(model.nonzeros()));
  Simplex sx(model, limits);
  auto st = sx.repair();
  res.pivots = sx.pivot_count;
  if (st == LPStatus::ResourceLimit) {
    res.status = LPStatus::ResourceLimit;
    res.note = "pivot limit";
    return res;
  }
  if (st == LPStatus::Infeasible) {
    res.status = LPStatus::Infeasible;
    res.farkas = sx.farkas();
    assert(res.farkas.valid(model));
    return res;
  }
  if (cost) {
    sx.seed_costs(*cost);
    auto st2 = sx.run();
    res.pivots = sx.pivot_count;
    if (st2 == Simplex::StepStatus::Limit) {
      res.status = LPStatus::ResourceLimit;
      res.note = "pivot limit";
      return res;
    }
    if (st2 == Simplex::StepStatus::Unbounded) {
      res.status = LPStatus::Unbounded;
      return res;
    }
  }
  res.status = LPStatus::Feasible;
  res.x = sx.extract();
  if (cost) {
    Rat z(0);
    for (int j = 0;
         j < model.num_vars() && j < static_cast<int>(cost->size()); ++j)
      z += (*cost)[j] * res.x[j];
    res.objective_value = z;
  }
  assert(model.check_point(res.x));
  return res;
}

}  // namespace

LPResult solve_feasibility(const LPModel& model, const SolveLimits& limits) {
  return run_solver(model, nullptr, limits);
}

LPResult minimize(const LPModel& model, const std::vector<Rat>& cost,
                  const SolveLimits& limits) {
  return run_solver(model, &cost, limits);
}

}  // namespace sched::lp
