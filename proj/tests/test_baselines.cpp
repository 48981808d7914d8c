#include <doctest.h>

#include <algorithm>

#include "sched/baselines.hpp"
#include "sched/exact.hpp"
#include "testutil.hpp"

using namespace sched;

TEST_CASE("graham on independent jobs") {
  Instance inst = Instance::make(6, 2, {});
  auto sched = graham_list(inst, default_priority(inst));
  CHECK(sched.max_occupied_slot() == 3);
  CHECK(sched.complete());
  CHECK(validate_schedule(inst, sched).ok);
}

TEST_CASE("graham on the gap instance takes two slots per block") {
  Instance g = gap_instance(3, 2);
  // Any topological priority gives the same makespan here.
  CHECK(graham_list(g, default_priority(g)).max_occupied_slot() == 4);
  std::vector<int> reversed{3, 2, 1, 0, 7, 6, 5, 4};
  CHECK(graham_list(g, reversed).max_occupied_slot() == 4);
}

TEST_CASE("graham rejects a non-topological priority") {
  Instance chain = Instance::make(3, 1, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(graham_list(chain, {2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(graham_list(chain, {0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(graham_list(chain, {0, 1}), std::invalid_argument);
}

TEST_CASE("graham busy-or-blocked dichotomy") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Instance inst = testutil::corpus_instance(seed, 2, 12, {2, 3});
    auto sched = graham_list(inst, default_priority(inst));
    REQUIRE(validate_schedule(inst, sched).ok);
    int mk = sched.max_occupied_slot();
    for (int t = 1; t < mk; ++t) {
      int occ = 0;
      for (int j = 0; j < inst.n(); ++j) occ += sched.slot[j] == t;
      if (occ == inst.m()) continue;
      // Not full: every later job must have a predecessor at slot >= t.
      for (int j = 0; j < inst.n(); ++j) {
        if (sched.slot[j] <= t) continue;
        bool blocked = false;
        for (int u = inst.predecessors(j).find_first();
             u != static_cast<int>(JobSet::npos);
             u = inst.predecessors(j).find_next(u))
          if (sched.slot[u] >= t) blocked = true;
        CHECK(blocked);
      }
    }
  }
}

TEST_CASE("graham respects the approximation guarantee") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    Instance inst = testutil::corpus_instance(seed, 2, 12, {2, 3, 4});
    auto opt = optimal_makespan(inst);
    REQUIRE(opt.known);
    int g = graham_list(inst, default_priority(inst)).max_occupied_slot();
    CHECK(inst.m() * g <= (2 * inst.m() - 1) * opt.makespan);
  }
}

TEST_CASE("coffman-graham on a chain") {
  Instance chain =
      Instance::make(5, 2, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto res = coffman_graham(chain);
  CHECK(res.schedule.max_occupied_slot() == 5);
}

TEST_CASE("coffman-graham labels are a topological permutation") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Instance inst = testutil::corpus_instance(seed, 2, 12, {2, 3});
    auto res = coffman_graham(inst);
    std::vector<int> sorted = res.labels;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < inst.n(); ++i) CHECK(sorted[i] == i + 1);
    // Higher label runs first; predecessors need higher labels.
    for (auto [u, v] : inst.prec()) CHECK(res.labels[u] > res.labels[v]);
    CHECK(validate_schedule(inst, res.schedule).ok);
  }
}

TEST_CASE("coffman-graham is optimal on two machines") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    Instance inst = testutil::corpus_instance(seed, 2, 12, {2});
    auto opt = optimal_makespan(inst);
    REQUIRE(opt.known);
    CHECK(coffman_graham(inst).schedule.max_occupied_slot() == opt.makespan);
  }
}

TEST_CASE("coffman-graham guarantee on three machines") {
  for (std::uint64_t seed = 300; seed < 500; ++seed) {
    Instance inst = testutil::corpus_instance(seed, 2, 12, {3});
    auto opt = optimal_makespan(inst);
    REQUIRE(opt.known);
    int cg = coffman_graham(inst).schedule.max_occupied_slot();
    CHECK(inst.m() * cg <= (2 * inst.m() - 2) * opt.makespan);
  }
}
