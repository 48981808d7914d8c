#include "sched/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sched/baselines.hpp"
#include "sched/exact.hpp"
#include "sched/instance.hpp"
#include "sched/relax.hpp"
#include "sched/rounding.hpp"

namespace sched::cli {

namespace {

using nlohmann::json;

// Accepts "p/q", integers, and plain decimals like "0.5".
Rat parse_rat_flag(const std::string& s) {
  if (s.find('.') == std::string::npos) return rat_from_string(s);
  std::size_t dot = s.find('.');
  std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
  if (frac.empty()) return rat_from_string(whole.empty() ? "0" : whole);
  Int den = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  bool neg = !whole.empty() && whole[0] == '-';
  Int w(whole.empty() || whole == "-" ? std::string("0") : whole);
  Int f(frac);
  Rat r = Rat(w) + (neg ? -Rat(f, den) : Rat(f, den));
  r.canonicalize();
  return r;
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::string generator_comment(const GenerateArgs& a) {
  std::ostringstream os;
  if (a.kind == "gap") {
    os << "generated: gap m=" << a.m << " k=" << a.k;
  } else if (a.kind == "random") {
    os << "generated: random n=" << a.n << " m=" << a.m << " p=" << a.p
       << " seed=" << a.seed;
  } else {
    os << "generated: layered layers=" << a.layers << " width=" << a.width
       << " m=" << a.m << " p=" << a.p << " seed=" << a.seed;
  }
  return os.str();
}

std::optional<long> seed_from_comment(const std::string& path) {
  auto c = read_instance_comment(path);
  if (!c) return std::nullopt;
  auto pos = c->find("seed=");
  if (pos == std::string::npos) return std::nullopt;
  try {
    return std::stol(c->substr(pos + 5));
  } catch (...) {
    return std::nullopt;
  }
}

rounding::RoundingParams rounding_params(const SolveArgs& a) {
  rounding::RoundingParams p;
  p.mode = a.mode == "theoretical" ? rounding::ParamMode::Theoretical
                                   : rounding::ParamMode::Practical;
  p.epsilon = parse_rat_flag(a.epsilon);
  p.k = a.k;
  p.delta = parse_rat_flag(a.delta);
  p.c1 = a.c1;
  p.base_case_threshold = a.base_threshold;
  p.level = a.level;
  p.base_case_by_conditioning = a.base_case_conditioning;
  p.exact_limits.node_budget = a.budget;
  return p;
}

struct SolveOutcome {
  json report;
  std::optional<PartialSchedule> schedule;
  int exit_code = kOk;
};

SolveOutcome solve_dispatch(const SolveArgs& args, const Instance& inst) {
  SolveOutcome out;
  json& rep = out.report;
  rep["instance"] = args.instance;
  rep["algo"] = args.algo;
  rep["n"] = inst.n();
  rep["m"] = inst.m();
  rep["verdict"] = "ok";
  rep["makespan"] = nullptr;
  rep["opt"] = nullptr;
  rep["lp_T"] = nullptr;
  rep["discarded"] = nullptr;
  rep["stats"] = nullptr;
  rep["theoretical"] = nullptr;

  if (args.algo == "exact") {
    ExactLimits lim;
    lim.node_budget = args.budget;
    auto res = optimal_makespan(inst, lim);
    if (!res.known) {
      rep["verdict"] = "unknown";
      out.exit_code = kResource;
      return out;
    }
    rep["makespan"] = res.makespan;
    rep["opt"] = res.makespan;
    out.schedule = res.witness;
  } else if (args.algo == "graham") {
    auto sched = graham_list(inst, default_priority(inst));
    rep["makespan"] = sched.max_occupied_slot();
    out.schedule = sched;
  } else if (args.algo == "cg") {
    auto res = coffman_graham(inst);
    rep["makespan"] = res.schedule.max_occupied_slot();
    out.schedule = res.schedule;
  } else if (args.algo == "lp") {
    int lb = std::max((inst.n() + inst.m() - 1) / inst.m(),
                      inst.longest_chain());
    int T = inst.n() == 0 ? 0
                          : relax::min_feasible_T(inst, std::max(1, lb),
                                                  std::max(1, inst.n()));
    rep["lp_T"] = T;
    int frac = 0, nonzero = 0;
    if (inst.n() > 0) {
      auto km = relax::build_K(inst, T);
      auto res = lp::solve_feasibility(km.model);
      for (int v = 0; v < km.info.base_vars; ++v) {
        if (sgn(res.x[v]) != 0) nonzero++;
        if (sgn(res.x[v]) != 0 && res.x[v] != 1) frac++;
      }
    }
    rep["stats"] = {{"fractional_vars", frac}, {"point_nonzeros", nonzero}};
  } else if (args.algo == "round") {
    rounding::RoundingParams params = rounding_params(args);
    auto [sched, st] = rounding::round_full(inst, params);
    // Completion time of the last original job; stats.makespan keeps the
    // horizon identity T + discards.
    rep["makespan"] = sched.max_occupied_slot();
    rep["discarded"] = st.discard_recursive + st.discard_matching_edf +
                       st.discard_middle;
    rep["stats"] = {{"T", st.T},
                    {"makespan", st.makespan},
                    {"discard_recursive", st.discard_recursive},
                    {"discard_matching_edf", st.discard_matching_edf},
                    {"discard_middle", st.discard_middle},
                    {"conditionings", st.conditionings},
                    {"resolves", st.resolves},
                    {"base_case_fallbacks", st.base_case_fallbacks}};
    // Theoretical parameter values for the padded horizon, for reference.
    if (st.T >= 1) {
      int k = rounding::theoretical_k(params.epsilon, inst.m(), st.T, params.c1);
      Rat delta = rounding::theoretical_delta(params.epsilon, inst.m(), st.T, k);
      rep["theoretical"] = {
          {"k", k},
          {"delta", rat_to_string(delta)},
          {"r_star", rat_to_string(rounding::theoretical_r_star(k, delta,
                                                                inst.m(), st.T))}};
    } else {
      rep["theoretical"] = nullptr;
    }
    out.schedule = sched;
  } else {
    throw CLI::ValidationError("unknown algorithm " + args.algo);
  }
  return out;
}

}  // namespace

int cmd_generate(const GenerateArgs& args) {
  try {
    Instance inst = args.kind == "gap" ? gap_instance(args.m, args.k)
                    : args.kind == "random"
                        ? random_dag(args.n, args.m, args.p, args.seed)
                        : layered_dag(args.layers, args.width, args.m, args.p,
                                      args.seed);
    save_instance(args.out, inst, generator_comment(args));
    std::cout << "wrote " << args.out << " (n=" << inst.n()
              << ", m=" << inst.m() << ", edges=" << inst.prec().size()
              << ")\n";
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "generate: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_solve(const SolveArgs& args) {
  Instance inst{};
  try {
    inst = load_instance(args.instance);
  } catch (const std::exception& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kUsage;
  }
  auto t0 = std::chrono::steady_clock::now();
  try {
    SolveOutcome out = solve_dispatch(args, inst);
    out.report["wall_ms"] = wall_ms_since(t0);
    std::cout << out.report.dump(2) << "\n";
    if (out.schedule && args.out != "-") {
      std::string path =
          args.out.empty() ? args.instance + ".sched" : args.out;
      save_schedule(path, *out.schedule);
    }
    return out.exit_code;
  } catch (const lp::LPResourceError& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kResource;
  } catch (const lift::LiftResourceError& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kResource;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "solve: " << e.what() << "\n";
    return kSemantic;
  }
}

int cmd_verify(const std::string& instance_path,
               const std::string& sched_path) {
  Instance inst{};
  PartialSchedule sched;
  try {
    inst = load_instance(instance_path);
    sched = load_schedule(sched_path, inst.n());
  } catch (const std::exception& e) {
    std::cerr << "verify: " << e.what() << "\n";
    return kUsage;
  }
  Verdict v = validate_schedule(inst, sched);
  if (v.ok) {
    std::cout << "valid\n";
    return kOk;
  }
  for (const auto& viol : v.violations)
    std::cout << "violation: " << viol.describe() << "\n";
  return kSemantic;
}

int cmd_bench(const BenchArgs& args) {
  namespace fs = std::filesystem;
  json report;
  report["rows"] = json::array();
  std::map<std::string, std::vector<double>> ratios;

  std::vector<std::string> files;
  if (fs::exists(args.corpus))
    for (const auto& entry : fs::directory_iterator(args.corpus))
      if (entry.is_regular_file()) files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  for (const auto& path : files) {
    Instance inst{};
    try {
      inst = load_instance(path);
    } catch (const std::exception&) {
      continue;  // not an instance file
    }
    std::optional<int> opt;
    if (inst.n() <= 20) {
      ExactLimits lim;
      lim.node_budget = args.budget;
      auto res = optimal_makespan(inst, lim);
      if (res.known) opt = res.makespan;
    }
    auto seed = seed_from_comment(path);
    for (const auto& algo : args.algos) {
      json row;
      row["instance"] = fs::path(path).filename().string();
      row["algo"] = algo;
      row["makespan"] = nullptr;
      row["opt"] = opt ? json(*opt) : json(nullptr);
      row["ratio"] = nullptr;
      row["discarded"] = nullptr;
      row["lp_T"] = nullptr;
      row["conditionings"] = nullptr;
      row["wall_ms"] = nullptr;
      row["seed"] = seed ? json(*seed) : json(nullptr);
      row["error"] = nullptr;
      auto t0 = std::chrono::steady_clock::now();
      try {
        if (algo == "exact") {
          if (opt) row["makespan"] = *opt;
        } else if (algo == "graham") {
          row["makespan"] = graham_list(inst, default_priority(inst))
                                .max_occupied_slot();
        } else if (algo == "cg") {
          row["makespan"] = coffman_graham(inst).schedule.max_occupied_slot();
        } else if (algo == "lp") {
          int lb = std::max((inst.n() + inst.m() - 1) / inst.m(),
                            inst.longest_chain());
          row["lp_T"] = inst.n() == 0
                            ? 0
                            : relax::min_feasible_T(inst, std::max(1, lb),
                                                    std::max(1, inst.n()));
        } else if (algo == "round") {
          SolveArgs sa;
          sa.budget = args.budget;
          auto [sched, st] = rounding::round_full(inst, rounding_params(sa));
          row["makespan"] = sched.max_occupied_slot();
          row["discarded"] = st.discard_recursive + st.discard_matching_edf +
                             st.discard_middle;
          row["conditionings"] = st.conditionings;
        } else {
          row["error"] = "unknown algorithm";
        }
      } catch (const std::exception& e) {
        row["error"] = e.what();
      }
      row["wall_ms"] = wall_ms_since(t0);
      if (!row["makespan"].is_null() && opt && *opt > 0) {
        double r = row["makespan"].get<double>() / *opt;
        row["ratio"] = r;
        ratios[algo].push_back(r);
      } else if (algo == "lp" && !row["lp_T"].is_null() && opt &&
                 row["lp_T"].get<double>() > 0) {
        // Integrality-gap direction: optimum over the relaxation horizon.
        double r = *opt / row["lp_T"].get<double>();
        row["ratio"] = r;
        ratios[algo].push_back(r);
      }
      report["rows"].push_back(row);
    }
  }

  report["aggregate"] = json::object();
  for (auto& [algo, rs] : ratios) {
    double mx = 0, sum = 0;
    for (double r : rs) {
      mx = std::max(mx, r);
      sum += r;
    }
    report["aggregate"][algo] = {{"max_ratio", mx},
                                 {"mean_ratio", sum / rs.size()},
                                 {"count", rs.size()}};
  }
  if (!args.out.empty()) {
    std::ofstream f(args.out, std::ios::binary);
    f << report.dump(2) << "\n";
  }
  std::cout << report["aggregate"].dump(2) << "\n";
  return kOk;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Hierarchy-lift rounding for makespan scheduling of unit jobs"};
  app.require_subcommand(1);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "write an instance file");
  gen->add_option("kind", ga.kind, "gap | random | layered")->required();
  gen->add_option("--m", ga.m, "machines");
  gen->add_option("--k", ga.k, "gap blocks");
  gen->add_option("--n", ga.n, "jobs (random)");
  gen->add_option("--layers", ga.layers);
  gen->add_option("--width", ga.width);
  gen->add_option("--p", ga.p, "edge probability");
  gen->add_option("--seed", ga.seed);
  gen->add_option("-o,--out", ga.out, "output path")->required();

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--algo", sa.algo, "exact | graham | cg | lp | round")
      ->required();
  solve->add_option("instance", sa.instance)->required();
  solve->add_option("-o,--out", sa.out, "schedule path ('-' skips)");
  solve->add_option("--budget", sa.budget, "exact search node budget");
  solve->add_option("--epsilon", sa.epsilon);
  solve->add_option("--level", sa.level, "lift level r");
  solve->add_option("--mode", sa.mode, "practical | theoretical");
  solve->add_option("--k", sa.k);
  solve->add_option("--delta", sa.delta, "density bound P/Q");
  solve->add_option("--c1", sa.c1);
  solve->add_option("--base-threshold", sa.base_threshold);
  solve->add_flag("--base-case-conditioning", sa.base_case_conditioning);

  std::string vi, vs;
  auto* verify = app.add_subcommand("verify", "validate a schedule file");
  verify->add_option("instance", vi)->required();
  verify->add_option("schedule", vs)->required();

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("--corpus", ba.corpus, "instance directory")->required();
  bench->add_option("--algos", ba.algos, "comma-separated list")
      ->delimiter(',')
      ->required();
  bench->add_option("-o,--out", ba.out, "report path");
  bench->add_option("--budget", ba.budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (gen->parsed()) return cmd_generate(ga);
  if (solve->parsed()) return cmd_solve(sa);
  if (verify->parsed()) return cmd_verify(vi, vs);
  if (bench->parsed()) return cmd_bench(ba);
  return kUsage;
}

}  // namespace sched::cli
