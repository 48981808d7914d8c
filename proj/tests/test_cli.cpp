#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sched/cli.hpp"
#include "sched/instance.hpp"

using namespace sched;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sched_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"sched"};
  for (auto& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("generate writes deterministic instance files") {
  TempDir dir;
  auto a = dir.file("a.prec");
  auto b = dir.file("b.prec");
  CHECK(run({"generate", "gap", "--m", "3", "--k", "4", "-o", a}) == cli::kOk);
  Instance inst = load_instance(a);
  CHECK(inst.n() == 16);
  CHECK(inst.m() == 3);
  CHECK(run({"generate", "random", "--n", "10", "--m", "3", "--p", "0.3",
             "--seed", "7", "-o", a}) == cli::kOk);
  CHECK(run({"generate", "random", "--n", "10", "--m", "3", "--p", "0.3",
             "--seed", "7", "-o", b}) == cli::kOk);
  CHECK(slurp(a) == slurp(b));  // same seed, byte-identical
  CHECK(run({"generate", "layered", "--layers", "3", "--width", "2", "--m",
             "2", "--p", "0.5", "--seed", "1", "-o", b}) == cli::kOk);
  CHECK(load_instance(b).n() == 6);
}

TEST_CASE("solve/verify round trip and exit codes") {
  TempDir dir;
  auto inst = dir.file("g.prec");
  auto sched = dir.file("g.sched");
  REQUIRE(run({"generate", "gap", "--m", "3", "--k", "2", "-o", inst}) ==
          cli::kOk);
  CHECK(run({"solve", "--algo", "exact", inst, "-o", sched}) == cli::kOk);
  CHECK(run({"verify", inst, sched}) == cli::kOk);
  CHECK(run({"solve", "--algo", "graham", inst, "-o", sched}) == cli::kOk);
  CHECK(run({"verify", inst, sched}) == cli::kOk);
  CHECK(run({"solve", "--algo", "cg", inst, "-o", sched}) == cli::kOk);
  CHECK(run({"verify", inst, sched}) == cli::kOk);
  CHECK(run({"solve", "--algo", "lp", inst, "-o", "-"}) == cli::kOk);
  CHECK(run({"solve", "--algo", "round", "--epsilon", "0.5", "--level", "0",
             inst, "-o", sched}) == cli::kOk);
  CHECK(run({"verify", inst, sched}) == cli::kOk);


  // A capacity violation is a semantic failure.
  {
    std::ofstream bad(sched);
    bad << "T 4\n0 1\n1 1\n2 1\n3 1\n4 2\n5 2\n6 2\n7 2\n";
  }
  CHECK(run({"verify", inst, sched}) == cli::kSemantic);
  // Malformed files are usage/format errors.
  {
    std::ofstream bad(inst);
    bad << "m 3\nq nonsense\n";
  }
  CHECK(run({"verify", inst, sched}) == cli::kUsage);
  CHECK(run({"solve", "--algo", "exact", inst}) == cli::kUsage);
  CHECK(run({"solve", "--algo", "nope", dir.file("missing.prec")}) ==
        cli::kUsage);
}

TEST_CASE("exact budget exhaustion maps to the resource exit code") {
  TempDir dir;
  auto inst = dir.file("big.prec");
  REQUIRE(run({"generate", "random", "--n", "16", "--m", "2", "--p", "0.05",
               "--seed", "3", "-o", inst}) == cli::kOk);
  CHECK(run({"solve", "--algo", "exact", "--budget", "3", inst, "-o", "-"}) ==
        cli::kResource);
}

TEST_CASE("bench produces the pinned row schema") {
  TempDir dir;
  for (int k = 1; k <= 4; ++k) {
    cli::GenerateArgs g;
    g.kind = "gap";
    g.m = 3;
    g.k = k;
    g.out = dir.file("gap" + std::to_string(k) + ".prec");
    REQUIRE(cli::cmd_generate(g) == cli::kOk);
  }
  auto report_path = dir.file("report.json");
  cli::BenchArgs b;
  b.corpus = dir.path.string();
  b.algos = {"exact", "graham", "cg", "lp", "round"};
  b.out = report_path;
  REQUIRE(cli::cmd_bench(b) == cli::kOk);
  auto report = nlohmann::json::parse(slurp(report_path));
  REQUIRE(report.contains("rows"));
  REQUIRE(report["rows"].size() == 4 * 5);
  const std::vector<std::string> keys{"instance", "algo",  "makespan", "opt",
                                      "ratio",    "discarded", "lp_T",
                                      "conditionings", "wall_ms", "seed",
                                      "error"};
  for (const auto& row : report["rows"]) {
    for (const auto& k : keys) CHECK(row.contains(k));
    CHECK(row.size() == keys.size());
    CHECK(row["error"].is_null());
  }
  // Graham stays within its guarantee on every row.
  for (const auto& row : report["rows"])
    if (row["algo"] == "graham")
      CHECK(row["makespan"].get<double>() * 3 <=
            (2 * 3 - 1) * row["opt"].get<double>());
  CHECK(report["aggregate"].contains("lp"));
  // The gap family ratio column peaks at 1.5 when k is a multiple of m.
  CHECK(report["aggregate"]["lp"]["max_ratio"].get<double>() ==
        doctest::Approx(1.5));
}

TEST_CASE("bench on an empty corpus exits cleanly") {
  TempDir dir;
  cli::BenchArgs b;
  b.corpus = dir.file("does_not_exist");
  b.algos = {"graham"};
  b.out = dir.file("empty.json");
  CHECK(cli::cmd_bench(b) == cli::kOk);
  auto report = nlohmann::json::parse(slurp(b.out));
  CHECK(report["rows"].empty());
}

TEST_CASE("solve reports stable top-level keys") {
  TempDir dir;
  auto inst = dir.file("i.prec");
  auto sched = dir.file("i.sched");
  REQUIRE(run({"generate", "random", "--n", "6", "--m", "2", "--p", "0.2",
               "--seed", "9", "-o", inst}) == cli::kOk);
  // Smoke the round stats keys through a real invocation.
  cli::SolveArgs s;
  s.algo = "round";
  s.instance = inst;
  s.out = "-";
  CHECK(cli::cmd_solve(s) == cli::kOk);
  // The documented level-1 invocation on a small instance.
  CHECK(run({"solve", "--algo", "round", "--epsilon", "0.5", "--level", "1",
             inst, "-o", sched}) == cli::kOk);
  CHECK(run({"verify", inst, sched}) == cli::kOk);
}
