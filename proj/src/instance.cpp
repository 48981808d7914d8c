#include "sched/instance.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sched/rational.hpp"

namespace sched {

namespace {

std::string cycle_message(const std::vector<int>& c) {
  std::ostringstream os;
  os << "precedence contains a cycle:";
  for (int j : c) os << ' ' << j;
  return os.str();
}

}  // namespace

CycleError::CycleError(std::vector<int> c)
    : std::runtime_error(cycle_message(c)), cycle(std::move(c)) {}

std::vector<std::pair<int, int>> transitive_closure(
    const std::vector<std::pair<int, int>>& prec, int n) {
  Instance inst = Instance::make(n, 1, prec);
  return inst.closure_pairs();
}

Instance Instance::make(int n, int m, std::vector<std::pair<int, int>> prec) {
  if (n < 0) throw std::invalid_argument("negative job count");
  if (m < 1) throw std::invalid_argument("machine count must be >= 1");
  for (auto [u, v] : prec) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop in precedence");
  }
  std::sort(prec.begin(), prec.end());
  prec.erase(std::unique(prec.begin(), prec.end()), prec.end());

  Instance inst;
  inst.n_ = n;
  inst.m_ = m;
  inst.prec_ = std::move(prec);

  std::vector<std::vector<int>> adj(n);
  std::vector<int> indeg(n, 0);
  for (auto [u, v] : inst.prec_) {
    adj[u].push_back(v);
    indeg[v]++;
  }

  // Kahn with min-ID selection; doubles as the cycle check.
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> queued(n, 0);
  std::vector<int> heap;
  for (int j = 0; j < n; ++j)
    if (indeg[j] == 0) heap.push_back(j);
  std::make_heap(heap.begin(), heap.end(), std::greater<>());
  std::vector<int> deg = indeg;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    int u = heap.back();
    heap.pop_back();
    order.push_back(u);
    for (int v : adj[u])
      if (--deg[v] == 0) {
        heap.push_back(v);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
      }
  }
  if (static_cast<int>(order.size()) != n) {
    // Walk predecessors among the unfinished jobs until a vertex repeats.
    std::vector<char> alive(n, 1);
    for (int j : order) alive[j] = 0;
    int start = 0;
    while (!alive[start]) ++start;
    std::vector<int> path;
    std::vector<int> pos(n, -1);
    int cur = start;
    while (pos[cur] < 0) {
      pos[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      for (auto [u, v] : inst.prec_)
        if (v == cur && alive[u] && deg[v] > 0) {
          cur = u;
          break;
        }
    }
    std::vector<int> cyc(path.begin() + pos[cur], path.end());
    std::reverse(cyc.begin(), cyc.end());
    throw CycleError(cyc);
  }

  inst.succ_.assign(n, JobSet(n));
  inst.pred_.assign(n, JobSet(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int u = *it;
    for (int v : adj[u]) {
      inst.succ_[u].set(v);
      inst.succ_[u] |= inst.succ_[v];
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = inst.succ_[u].find_first(); v != static_cast<int>(JobSet::npos);
         v = inst.succ_[u].find_next(v))
      inst.pred_[v].set(u);

  inst.chain_to_.assign(n, 1);
  inst.chain_from_.assign(n, 1);
  for (int u : order)
    for (int v : adj[u])
      inst.chain_to_[v] = std::max(inst.chain_to_[v], inst.chain_to_[u] + 1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (int v : adj[*it])
      inst.chain_from_[*it] =
          std::max(inst.chain_from_[*it], inst.chain_from_[v] + 1);
  return inst;
}

std::vector<std::pair<int, int>> Instance::closure_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = succ_[u].find_first(); v != static_cast<int>(JobSet::npos);
         v = succ_[u].find_next(v))
      out.emplace_back(u, v);
  return out;
}

std::vector<std::pair<int, int>> Instance::reduction_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v = succ_[u].find_first(); v != static_cast<int>(JobSet::npos);
         v = succ_[u].find_next(v)) {
      JobSet mid = succ_[u] & pred_[v];
      if (mid.none()) out.emplace_back(u, v);
    }
  return out;
}

int Instance::degree_within(int j, const JobSet& sub) const {
  JobSet nb = (succ_[j] | pred_[j]) & sub;
  return static_cast<int>(nb.count()) + 1;
}

int Instance::max_degree(const JobSet& sub) const {
  int best = 0;
  for (int j = sub.find_first(); j != static_cast<int>(JobSet::npos);
       j = sub.find_next(j))
    best = std::max(best, degree_within(j, sub));
  return best;
}

std::vector<int> Instance::topological_order() const {
  std::vector<int> indeg(n_, 0);
  for (auto [u, v] : prec_) indeg[v]++;
  std::vector<int> heap, order;
  for (int j = 0; j < n_; ++j)
    if (indeg[j] == 0) heap.push_back(j);
  std::make_heap(heap.begin(), heap.end(), std::greater<>());
  std::vector<std::vector<int>> adj(n_);
  for (auto [u, v] : prec_) adj[u].push_back(v);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    int u = heap.back();
    heap.pop_back();
    order.push_back(u);
    for (int v : adj[u])
      if (--indeg[v] == 0) {
        heap.push_back(v);
        std::push_heap(heap.begin(), heap.end(), std::greater<>());
      }
  }
  return order;
}

int Instance::longest_chain() const {
  int best = 0;
  for (int j = 0; j < n_; ++j) best = std::max(best, chain_to_[j]);
  return best;
}

PartialSchedule PartialSchedule::empty(int n, int horizon) {
  PartialSchedule s;
  s.horizon = horizon;
  s.slot.assign(n, 0);
  s.discarded.assign(n, 0);
  return s;
}

int PartialSchedule::assigned_count() const {
  int c = 0;
  for (int s : slot) c += s > 0;
  return c;
}

int PartialSchedule::discarded_count() const {
  int c = 0;
  for (char d : discarded) c += d != 0;
  return c;
}

bool PartialSchedule::complete() const {
  for (size_t j = 0; j < slot.size(); ++j)
    if (slot[j] <= 0 || discarded[j]) return false;
  return true;
}

int PartialSchedule::max_occupied_slot() const {
  int best = 0;
  for (int s : slot) best = std::max(best, s);
  return best;
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Structural:
      os << "job " << a << " assigned to slot " << slot << " outside horizon";
      break;
    case Capacity:
      os << "slot " << slot << " holds more than m jobs";
      break;
    case Precedence:
      os << "job " << a << " must finish before job " << b;
      break;
    case Overlap:
      os << "job " << a << " both assigned and discarded";
      break;
  }
  return os.str();
}

Verdict validate_schedule(const Instance& inst, const PartialSchedule& sched) {
  Verdict v;
  auto add = [&](Violation viol) {
    v.ok = false;
    v.violations.push_back(viol);
  };
  const int n = inst.n();
  if (static_cast<int>(sched.slot.size()) != n ||
      static_cast<int>(sched.discarded.size()) != n) {
    add({Violation::Structural, -1, -1, -1});
    return v;
  }
  std::vector<int> occupancy(sched.horizon + 1, 0);
  for (int j = 0; j < n; ++j) {
    if (sched.slot[j] > 0 && sched.discarded[j]) add({Violation::Overlap, j, -1, -1});
    if (sched.slot[j] < 0 || sched.slot[j] > sched.horizon) {
      add({Violation::Structural, j, -1, sched.slot[j]});
      continue;
    }
    if (sched.slot[j] > 0) occupancy[sched.slot[j]]++;
  }
  for (int t = 1; t <= sched.horizon; ++t)
    if (occupancy[t] > inst.m()) add({Violation::Capacity, -1, -1, t});
  for (auto [u, w] : inst.closure_pairs()) {
    if (sched.discarded[u] || sched.discarded[w]) continue;
    if (sched.slot[u] > 0 && sched.slot[w] > 0 && sched.slot[u] >= sched.slot[w])
      add({Violation::Precedence, u, w, sched.slot[w]});
  }
  return v;
}

Instance gap_instance(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("gap_instance needs m,k >= 1");
  const int bs = m + 1;
  const int n = k * bs;
  std::vector<std::pair<int, int>> prec;
  for (int i = 0; i + 1 < k; ++i)
    for (int u = i * bs; u < (i + 1) * bs; ++u)
      for (int v = (i + 1) * bs; v < (i + 2) * bs; ++v) prec.emplace_back(u, v);
  return Instance::make(n, m, std::move(prec));
}

Instance random_dag(int n, int m, double edge_prob, std::uint64_t seed) {
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("edge_prob outside [0,1]");
  SplitMix64 rng(seed);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[rng.range(0, i)]);
  std::vector<std::pair<int, int>> prec;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_prob)) prec.emplace_back(perm[i], perm[j]);
  return Instance::make(n, m, std::move(prec));
}

Instance layered_dag(int layers, int width, int m, double edge_prob,
                     std::uint64_t seed) {
  if (layers < 0 || width < 0) throw std::invalid_argument("negative size");
  SplitMix64 rng(seed);
  const int n = layers * width;
  std::vector<std::pair<int, int>> prec;
  for (int l = 0; l + 1 < layers; ++l)
    for (int a = 0; a < width; ++a)
      for (int b = 0; b < width; ++b)
        if (rng.bernoulli(edge_prob))
          prec.emplace_back(l * width + a, (l + 1) * width + b);
  return Instance::make(n, m, std::move(prec));
}

PaddedInstance pad_to_power_of_two(const Instance& inst, int T) {
  if (T < 1) throw std::invalid_argument("horizon must be >= 1");
  if (is_power_of_two(T)) return {inst, T, inst.n()};
  const int T2 = static_cast<int>(ceil_power_of_two(T));
  const int dummies = inst.m() * (T2 - T);
  const int n0 = inst.n();
  std::vector<std::pair<int, int>> prec = inst.prec();
  for (int d = 0; d < dummies; ++d)
    for (int u = 0; u < n0; ++u) prec.emplace_back(u, n0 + d);
  return {Instance::make(n0 + dummies, inst.m(), std::move(prec)), T2, n0};
}

// I/O ------------------------------------------------------------------------

Instance parse_instance(std::istream& in) {
  std::string line;
  int m = -1, n = -1;
  std::vector<std::pair<int, int>> prec;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "m") {
      if (!(is >> m) || m < 1) fail("bad machine count");
    } else if (tag == "n") {
      if (!(is >> n) || n < 0) fail("bad job count");
    } else if (tag == "e") {
      int u, v;
      if (!(is >> u >> v)) fail("bad edge");
      if (n < 0) fail("edge before job count");
      if (u < 0 || u >= n || v < 0 || v >= n || u == v) fail("edge out of range");
      prec.emplace_back(u, v);
    } else {
      fail("unknown directive '" + tag + "'");
    }
  }
  if (m < 1 || n < 0) throw ParseError("missing m or n header");
  try {
    return Instance::make(n, m, std::move(prec));
  } catch (const CycleError& e) {
    throw ParseError(e.what());
  }
}

void write_instance(std::ostream& out, const Instance& inst,
                    const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "m " << inst.m() << "\n";
  out << "n " << inst.n() << "\n";
  for (auto [u, v] : inst.prec()) out << "e " << u << " " << v << "\n";
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_instance(in);
}

void save_instance(const std::string& path, const Instance& inst,
                   const std::string& comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  write_instance(out, inst, comment);
}

std::optional<std::string> read_instance_comment(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t start = line.find_first_not_of("# ");
      return line.substr(start == std::string::npos ? line.size() : start);
    }
    break;
  }
  return std::nullopt;
}

PartialSchedule parse_schedule(std::istream& in, int n) {
  std::string line;
  int T = -1;
  PartialSchedule sched = PartialSchedule::empty(n, 0);
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    std::string first;
    is >> first;
    if (first == "T") {
      if (!(is >> T) || T < 0) fail("bad horizon");
      sched.horizon = T;
      continue;
    }
    int job;
    try {
      job = std::stoi(first);
    } catch (...) {
      fail("bad job id");
      return sched;  // unreachable
    }
    if (job < 0 || job >= n) fail("job id out of range");
    std::string what;
    if (!(is >> what)) fail("missing slot");
    if (what == "D") {
      sched.discarded[job] = 1;
    } else {
      int s;
      try {
        s = std::stoi(what);
      } catch (...) {
        fail("bad slot");
        return sched;  // unreachable
      }
      sched.slot[job] = s;
    }
  }
  if (T < 0) throw ParseError("missing T header");
  return sched;
}

void write_schedule(std::ostream& out, const PartialSchedule& sched) {
  out << "T " << sched.horizon << "\n";
  for (size_t j = 0; j < sched.slot.size(); ++j) {
    if (sched.discarded[j])
      out << j << " D\n";
    else if (sched.slot[j] > 0)
      out << j << " " << sched.slot[j] << "\n";
  }
}

PartialSchedule load_schedule(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_schedule(in, n);
}

void save_schedule(const std::string& path, const PartialSchedule& sched) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  write_schedule(out, sched);
}

}  // namespace sched
