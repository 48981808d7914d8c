#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sched {

// Exact rational scalar used throughout the LP and lift layers.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p" or "p/q". Used by the CLI for --delta style flags.
inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline bool is_power_of_two(long x) { return x > 0 && (x & (x - 1)) == 0; }

// Smallest power of two >= x (x >= 1).
inline long ceil_power_of_two(long x) {
  long p = 1;
  while (p < x) p <<= 1;
  return p;
}

inline int log2_exact(long x) {
  int l = 0;
  while ((1L << l) < x) ++l;
  if ((1L << l) != x) throw std::invalid_argument("not a power of two");
  return l;
}

// Deterministic, platform-independent RNG (splitmix64). All seeded
// generation in the artifact goes through this so corpora are
// reproducible bit for bit.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound). Modulo bias is irrelevant at desk scale and
  // keeps the stream identical across platforms.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform01() < p; }
};

}  // namespace sched
