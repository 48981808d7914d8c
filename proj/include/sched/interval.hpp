#pragma once

#include <stdexcept>
#include <vector>

#include "sched/rational.hpp"

namespace sched {

// Contiguous slot range, inclusive on both ends.
struct Interval {
  int lo = 1, hi = 0;
  int len() const { return hi - lo + 1; }
  bool contains(int t) const { return lo <= t && t <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// Binary laminar dissection of a power-of-two root interval: level l holds
// 2^l intervals of length |root| / 2^l; level depth() holds single slots.
class IntervalFamily {
 public:
  static IntervalFamily over(Interval root) {
    if (!is_power_of_two(root.len()))
      throw std::invalid_argument("family root must have power-of-two length");
    IntervalFamily f;
    f.root_ = root;
    f.depth_ = log2_exact(root.len());
    return f;
  }

  Interval root() const { return root_; }
  int depth() const { return depth_; }  // L; levels are 0..L
  int count_at(int level) const { return 1 << level; }
  int length_at(int level) const { return root_.len() >> level; }

  Interval at(int level, int idx) const {
    if (level < 0 || level > depth_ || idx < 0 || idx >= count_at(level))
      throw std::out_of_range("interval index");
    int len = length_at(level);
    int lo = root_.lo + idx * len;
    return {lo, lo + len - 1};
  }

  std::vector<Interval> level(int l) const {
    std::vector<Interval> out;
    out.reserve(count_at(l));
    for (int i = 0; i < count_at(l); ++i) out.push_back(at(l, i));
    return out;
  }

  // Boundary values t_0..t_p when the root splits into p equal parts;
  // interval i covers t_{i-1}+1 .. t_i.
  std::vector<int> boundaries(int p) const {
    std::vector<int> t(p + 1);
    int len = root_.len() / p;
    for (int i = 0; i <= p; ++i) t[i] = root_.lo - 1 + i * len;
    return t;
  }

  // Deepest level whose interval fully contains [lo, hi]; the containing
  // interval is unique per level by laminarity.
  int deepest_containing(int lo, int hi) const {
    if (lo < root_.lo || hi > root_.hi || lo > hi)
      throw std::out_of_range("span outside root");
    int level = 0;
    while (level < depth_) {
      int len = length_at(level + 1);
      int il = (lo - root_.lo) / len;
      int ih = (hi - root_.lo) / len;
      if (il != ih) break;
      ++level;
    }
    return level;
  }

 private:
  Interval root_;
  int depth_ = 0;
};

}  // namespace sched
