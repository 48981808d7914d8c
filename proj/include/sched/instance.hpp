#pragma once

#include <boost/dynamic_bitset.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sched {

using JobSet = boost::dynamic_bitset<>;

struct CycleError : std::runtime_error {
  std::vector<int> cycle;  // witness, consecutive jobs each preceding the next
  explicit CycleError(std::vector<int> c);
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Returns the smallest transitive superset of `prec`; irreflexive.
// Throws CycleError with a witness if `prec` has a cycle.
std::vector<std::pair<int, int>> transitive_closure(
    const std::vector<std::pair<int, int>>& prec, int n);

// Scheduling instance: n unit jobs 0..n-1, m identical machines, precedence
// order u < v given as edges. The transitive closure is materialized as one
// bitset row per job; instances are immutable after construction.
class Instance {
 public:
  static Instance make(int n, int m, std::vector<std::pair<int, int>> prec);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<std::pair<int, int>>& prec() const { return prec_; }

  bool before(int u, int v) const { return succ_[u].test(v); }
  const JobSet& successors(int j) const { return succ_[j]; }    // delta^+(j)
  const JobSet& predecessors(int j) const { return pred_[j]; }  // delta^-(j)

  std::vector<std::pair<int, int>> closure_pairs() const;
  // Edges (u,v) of the closure with no intermediate w, u < w < v.
  std::vector<std::pair<int, int>> reduction_pairs() const;

  // |delta(j) ∩ sub| + 1 for j in sub; the degree notion behind Delta(J').
  int degree_within(int j, const JobSet& sub) const;
  // Delta(sub): max degree_within over jobs of sub; 0 for empty sub.
  int max_degree(const JobSet& sub) const;

  std::vector<int> topological_order() const;  // Kahn, min-ID tie-break
  int longest_chain() const;                   // number of jobs on a max chain
  // Longest chain ending at / starting from j (counting j).
  int chain_to(int j) const { return chain_to_[j]; }
  int chain_from(int j) const { return chain_from_[j]; }

  JobSet all_jobs() const { JobSet s(n_); s.set(); return s; }

 private:
  int n_ = 0, m_ = 1;
  std::vector<std::pair<int, int>> prec_;
  std::vector<JobSet> succ_, pred_;
  std::vector<int> chain_to_, chain_from_;
};

// Partial assignment of jobs to slots 1..horizon plus a discarded set.
// slot[j] == 0 means unassigned. Assigned and discarded are disjoint.
struct PartialSchedule {
  int horizon = 0;
  std::vector<int> slot;        // size n, 0 = unassigned
  std::vector<char> discarded;  // size n

  static PartialSchedule empty(int n, int horizon);
  bool assigned(int j) const { return slot[j] > 0; }
  bool is_discarded(int j) const { return discarded[j] != 0; }
  int assigned_count() const;
  int discarded_count() const;
  // True when every job is assigned (nothing unassigned or discarded).
  bool complete() const;
  int max_occupied_slot() const;
};

struct Violation {
  enum Kind { Structural, Capacity, Precedence, Overlap } kind;
  int a = -1, b = -1, slot = -1;
  std::string describe() const;
};

struct Verdict {
  bool ok = true;
  std::vector<Violation> violations;
};

// Checks per-slot occupancy <= m and sigma(j) < sigma(j') for all
// non-discarded j < j'. Dependencies involving discarded or unassigned
// jobs play no role.
Verdict validate_schedule(const Instance& inst, const PartialSchedule& sched);

// Generators ----------------------------------------------------------------

// k blocks of m+1 jobs each, every job of block i before every job of
// block i+1. Integral optimum is 2k while the LP packs blocks at rate
// m/(m+1).
Instance gap_instance(int m, int k);

// Random DAG: edges (u,v), u before v in a random permutation order, kept
// independently with probability edge_prob. Deterministic for a fixed seed.
Instance random_dag(int n, int m, double edge_prob, std::uint64_t seed);

// `layers` layers of `width` jobs; edges between adjacent layers with
// probability edge_prob.
Instance layered_dag(int layers, int width, int m, double edge_prob,
                     std::uint64_t seed);

struct PaddedInstance {
  Instance inst;
  int horizon = 0;     // power-of-two horizon
  int original_n = 0;  // jobs below this index are the original ones
};

// If T is a power of two, identity. Otherwise appends m*(2^z - T) dummy
// jobs, each depending on every original job, and returns horizon 2^z.
PaddedInstance pad_to_power_of_two(const Instance& inst, int T);

// File formats --------------------------------------------------------------
//
// Instance file (bit-exact, LF line endings, single spaces):
//   m <int>
//   n <int>
//   e <u> <v>        (zero or more, u prec v, 0-indexed)
// Lines starting with '#' are ignored.
//
// Schedule file:
//   T <int>
//   <job> <slot>     or   <job> D

Instance parse_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst,
                    const std::string& comment = "");
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst,
                   const std::string& comment = "");
// First '#' comment line of the file, without the leading "# ", if any.
std::optional<std::string> read_instance_comment(const std::string& path);

PartialSchedule parse_schedule(std::istream& in, int n);
void write_schedule(std::ostream& out, const PartialSchedule& sched);
PartialSchedule load_schedule(const std::string& path, int n);
void save_schedule(const std::string& path, const PartialSchedule& sched);

}  // namespace sched
