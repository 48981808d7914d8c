#pragma once

#include <string>
#include <vector>

namespace sched::cli {

// Exit codes: 0 success/valid, 1 semantic failure (infeasible/invalid),
// 2 usage/format error, 3 resource cap.
inline constexpr int kOk = 0;
inline constexpr int kSemantic = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResource = 3;

struct GenerateArgs {
  std::string kind;  // gap | random | layered
  int m = 2, k = 2, n = 8, layers = 3, width = 3;
  double p = 0.3;
  std::uint64_t seed = 1;
  std::string out;
};

struct SolveArgs {
  std::string algo;  // exact | graham | cg | lp | round
  std::string instance;
  std::string out;          // schedule path; empty = derive, "-" = skip
  std::uint64_t budget = 5'000'000;
  std::string epsilon = "1/2";
  int level = 0;
  std::string mode = "practical";
  int k = 1;
  std::string delta = "1/4";
  int c1 = 1;
  int base_threshold = 4;
  bool base_case_conditioning = false;
};

struct BenchArgs {
  std::string corpus;
  std::vector<std::string> algos;
  std::string out;
  std::uint64_t budget = 2'000'000;
};

int cmd_generate(const GenerateArgs& args);
int cmd_solve(const SolveArgs& args);
int cmd_verify(const std::string& instance_path, const std::string& sched_path);
int cmd_bench(const BenchArgs& args);

// Full argv entry point used by the binary.
int run_cli(int argc, const char* const* argv);

}  // namespace sched::cli
