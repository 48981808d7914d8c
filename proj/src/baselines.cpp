#include "sched/baselines.hpp"

#include <algorithm>
#include <stdexcept>

namespace sched {

std::vector<int> default_priority(const Instance& inst) {
  return inst.topological_order();
}

PartialSchedule graham_list(const Instance& inst,
                            const std::vector<int>& priority) {
  const int n = inst.n();
  if (static_cast<int>(priority.size()) != n)
    throw std::invalid_argument("priority must list every job once");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int j = priority[i];
    if (j < 0 || j >= n || pos[j] >= 0)
      throw std::invalid_argument("priority is not a permutation");
    pos[j] = i;
  }
  for (auto [u, v] : inst.prec())
    if (pos[u] > pos[v])
      throw std::invalid_argument("priority is not a topological order");

  PartialSchedule sched = PartialSchedule::empty(n, 0);
  JobSet done(n);
  int t = 0;
  int remaining = n;
  while (remaining > 0) {
    ++t;
    // Jobs whose predecessors all finished in strictly earlier slots.
    std::vector<int> avail;
    for (int i = 0; i < n; ++i) {
      int j = priority[i];
      if (sched.slot[j] == 0 && inst.predecessors(j).is_subset_of(done))
        avail.push_back(j);
      if (static_cast<int>(avail.size()) == inst.m()) break;
    }
    for (int j : avail) sched.slot[j] = t;
    for (int j : avail) done.set(j);
    remaining -= static_cast<int>(avail.size());
  }
  sched.horizon = t;
  return sched;
}

CoffmanGrahamResult coffman_graham(const Instance& inst) {
  const int n = inst.n();
  std::vector<std::vector<int>> red_succ(n), red_pred(n);
  for (auto [u, v] : inst.reduction_pairs()) {
    red_succ[u].push_back(v);
    red_pred[v].push_back(u);
  }

  // Labels 1..n, sinks first. The next label goes to the job whose
  // decreasing successor-label sequence is lexicographically smallest
  // among jobs with all successors labeled; ties by job ID.
  std::vector<int> labels(n, 0);
  std::vector<int> unlabeled_succ(n);
  for (int j = 0; j < n; ++j)
    unlabeled_succ[j] = static_cast<int>(red_succ[j].size());
  auto succ_labels = [&](int j) {
    std::vector<int> ls;
    ls.reserve(red_succ[j].size());
    for (int v : red_succ[j]) ls.push_back(labels[v]);
    std::sort(ls.rbegin(), ls.rend());
    return ls;
  };
  for (int next = 1; next <= n; ++next) {
    int best = -1;
    std::vector<int> best_ls;
    for (int j = 0; j < n; ++j) {
      if (labels[j] != 0 || unlabeled_succ[j] != 0) continue;
      std::vector<int> ls = succ_labels(j);
      if (best < 0 || ls < best_ls || (ls == best_ls && j < best)) {
        best = j;
        best_ls = std::move(ls);
      }
    }
    labels[best] = next;
    for (int u : red_pred[best]) unlabeled_succ[u]--;
  }

  std::vector<int> priority(n);
  for (int j = 0; j < n; ++j) priority[j] = j;
  std::sort(priority.begin(), priority.end(),
            [&](int a, int b) { return labels[a] > labels[b]; });
  return {graham_list(inst, priority), labels};
}

}  // namespace sched
