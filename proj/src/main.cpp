// Command-line driver: solve, bench, generate, oracle, report.
//
// Exit codes: 0 success, 2 unreadable/invalid input, 3 solve failure.
// All commands are deterministic for a fixed --seed; only reported wall
// times vary between runs.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "scheloc/arcflow.hpp"
#include "scheloc/colgen.hpp"
#include "scheloc/framework.hpp"
#include "scheloc/heuristics.hpp"
#include "scheloc/io.hpp"
#include "scheloc/mip.hpp"
#include "scheloc/mipheur.hpp"
#include "scheloc/oracle.hpp"
#include "scheloc/report.hpp"
#include "scheloc/schedule.hpp"

namespace {

using namespace scheloc;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolve = 3;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// `auto` tries the native format first (a native file can never parse as the
// literature stream and vice versa: their token counts differ by the header's
// scale field), falling back to the literature layout.
Instance load_instance(const std::string& path, const std::string& fmt) {
  if (fmt == "native") return read_instance(path);
  if (fmt == "lit") return read_instance_literature(path);
  try {
    return read_instance(path);
  } catch (const ParseError& native_err) {
    try {
      return read_instance_literature(path);
    } catch (const ParseError& lit_err) {
      throw ParseError(std::string(native_err.what()) + "; as literature layout: " + lit_err.what());
    }
  }
}

void print_schedule(std::ostream& os, const Solution& sol) {
  for (const MachineSchedule& ms : sol.machines) {
    os << "  location " << ms.location << ":";
    for (const ScheduledJob& sj : ms.jobs)
      os << " j" << sj.job << "[" << sj.start << "," << sj.completion << ")";
    os << "\n";
  }
}

void print_bounds_line(std::ostream& os, const Bounds& b, double wall_s) {
  os << "lb " << b.lb << "  ub " << b.ub << "  optimal " << (b.optimal ? "yes" : "no");
  if (b.lb > 0 && b.ub != std::numeric_limits<Time>::max()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", percent_gap(static_cast<double>(b.ub), static_cast<double>(b.lb)));
    os << "  gap " << buf << "%";
  }
  char tbuf[32];
  std::snprintf(tbuf, sizeof tbuf, "%.2f", wall_s);
  os << "  time " << tbuf << "s\n";
}

struct SolveArgs {
  std::string path;
  std::string stage = "framework";
  std::string fmt = "auto";
  std::string out, dump_graph_path, dump_lp_path;
  double time_limit = 300;
  std::uint64_t seed = 0;
  bool verbose = false;
};

int cmd_solve(const SolveArgs& a) {
  Instance inst;
  try {
    inst = load_instance(a.path, a.fmt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Solution sol;
    Bounds b;
    std::vector<StageReport> stages;
    std::string closed_by;

    if (a.stage == "framework") {
      FrameworkOptions fo;
      fo.seed = a.seed;
      fo.stage_time_limit_s = a.time_limit;
      fo.cg_time_limit_s = a.time_limit;
      fo.heuristic_time_limit_s = std::min(a.time_limit, 120.0);
      if (a.verbose) fo.trace = &std::cerr;
      FrameworkResult r = run_framework(inst, fo);
      sol = std::move(r.best);
      b = r.bounds;
      stages = std::move(r.stages);
      closed_by = std::move(r.closed_by);
    } else if (a.stage == "ils") {
      IlsOptions io_;
      io_.seed = a.seed;
      IlsResult r = run_ils(inst, io_);
      if (a.verbose)
        for (std::size_t i = 0; i < r.start_makespan.size(); ++i)
          std::cerr << "start " << i << ": makespan " << r.start_makespan[i]
                    << (static_cast<int>(i) == r.best_start ? "  <- best" : "") << "\n";
      sol = std::move(r.best);
      b.lb = initial_lower_bound(inst);
      b.ub = sol.makespan;
    } else if (a.stage == "cg") {
      const Solution seed = local_search(inst, construct_deterministic(inst));
      const ArcFlowGraph g = build_graph(inst, seed.makespan);
      CgLimits cl;
      cl.time_limit_s = a.time_limit;
      if (a.verbose) cl.trace = &std::cerr;
      const CgResult r = run_colgen(g, inst, seed, cl);
      sol = seed;
      b.lb = initial_lower_bound(inst);
      if (r.proven) b.lb = std::max(b.lb, safe_ceil(r.value));
      b.ub = sol.makespan;
      std::cout << "relaxation value " << r.value << (r.proven ? " (proven)" : " (limit hit, restricted master only)")
                << ", " << r.trace.size() << " iterations, pool " << r.pool.size() << " columns\n";
    } else if (a.stage == "afcg" || a.stage == "afsubsetm") {
      MipHeuristicOptions mo;
      mo.time_limit_s = a.time_limit;
      const MipHeuristicResult r = a.stage == "afcg" ? af_cg_heuristic(inst, mo) : af_subset_m_heuristic(inst, mo);
      sol = r.sol;
      b.lb = initial_lower_bound(inst);
      b.ub = sol.makespan;
    } else {  // full arc-flow model, warm-started
      const Solution seed = local_search(inst, construct_deterministic(inst));
      const ArcFlowGraph g = build_graph(inst, seed.makespan);
      const AfModel model = build_model(g, inst);
      const std::vector<double> warm = encode_solution(model, g, seed);
      lps::MipOptions mo;
      mo.time_limit_s = a.time_limit;
      mo.branch_priority = model.branch_priority;
      mo.objective_integral = true;
      const lps::MipResult r = lps::solve_mip(model.lp, model.integer_mask, &warm, mo);
      sol = r.x.empty() ? seed : extract_solution(model, g, inst, r.x);
      if (sol.makespan > seed.makespan) sol = seed;
      b.lb = initial_lower_bound(inst);
      b.ub = sol.makespan;
      // the horizon equals a feasible makespan, so the truncated model's
      // bound transfers to the full problem
      if (r.status == lps::MipStatus::Optimal)
        b.lb = std::max(b.lb, b.ub);
      else if (std::isfinite(r.bound))
        b.lb = std::max(b.lb, safe_ceil(r.bound));
      std::cout << "nodes " << r.nodes << "\n";
    }
    b.optimal = b.lb == b.ub;
    const double wall = seconds_since(t0);

    std::cout << "instance " << inst.name << " (n=" << inst.n << " m=" << inst.m << " p=" << inst.p << ")\n";
    for (const StageReport& st : stages) {
      std::cout << "  stage " << st.stage << (st.ran ? "" : " [skipped]") << ": lb=" << st.lb << " ub=";
      if (st.ub == std::numeric_limits<Time>::max())
        std::cout << "-";
      else
        std::cout << st.ub;
      if (!st.note.empty()) std::cout << " (" << st.note << ")";
      std::cout << "\n";
    }
    if (!closed_by.empty()) std::cout << "closed by " << closed_by << "\n";
    std::cout << "makespan " << sol.makespan;
    if (inst.scale != 1) std::cout << " (scaled; original units " << static_cast<double>(sol.makespan) / static_cast<double>(inst.scale) << ")";
    std::cout << "\n";
    print_bounds_line(std::cout, b, wall);
    print_schedule(std::cout, sol);

    if (!a.dump_graph_path.empty() || !a.dump_lp_path.empty()) {
      const ArcFlowGraph g = build_graph(inst, b.ub);
      if (!a.dump_graph_path.empty()) {
        std::ofstream os(a.dump_graph_path);
        if (!os) throw std::runtime_error("cannot write " + a.dump_graph_path);
        dump_graph(g, os);
      }
      if (!a.dump_lp_path.empty()) {
        const AfModel model = build_model(g, inst, nullptr, /*with_names=*/true);
        std::ofstream os(a.dump_lp_path);
        if (!os) throw std::runtime_error("cannot write " + a.dump_lp_path);
        lps::write_lp_text(model.lp, os, model.integer_mask, inst.name);
      }
    }
    if (!a.out.empty()) {
      SolutionRecord rec;
      rec.solution = sol;
      rec.bounds = b;
      rec.meta = {inst.name, a.stage, wall};
      write_solution(rec, a.out);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolve;
  }
}

struct BenchArgs {
  std::string dir;
  std::string format = "csv";
  std::string fmt = "auto";
  std::string out;
  double time_limit = 60;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: SCHELOC_THREADS env, else 1
};

int bench_workers(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SCHELOC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

int cmd_bench(const BenchArgs& a) {
  std::vector<fs::path> files;
  try {
    for (const auto& entry : fs::directory_iterator(a.dir))
      if (entry.is_regular_file()) files.push_back(entry.path());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchRow> slots(files.size());
  std::vector<char> ok(files.size(), 0);
  std::atomic<std::size_t> cursor{0};
  std::mutex log_mutex;

  auto work = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < files.size(); i = cursor.fetch_add(1)) {
      const std::string path = files[i].string();
      try {
        const Instance inst = load_instance(path, a.fmt);
        FrameworkOptions fo;
        fo.seed = a.seed;
        fo.stage_time_limit_s = a.time_limit;
        fo.cg_time_limit_s = a.time_limit;
        fo.heuristic_time_limit_s = std::min(a.time_limit, 120.0);
        const auto t0 = std::chrono::steady_clock::now();
        const FrameworkResult res = run_framework(inst, fo);
        BenchRow& r = slots[i];
        r.set = family_of(inst.name);
        r.ratio_bucket = ratio_bucket(inst.n, inst.p);
        r.n = inst.n;
        r.m = inst.m;
        r.p = inst.p;
        r.lb = res.bounds.lb;
        r.ub = res.bounds.ub;
        r.gap_pct = percent_gap(static_cast<double>(r.ub), static_cast<double>(r.lb));
        r.stage_closed = res.closed_by;
        r.time_s = seconds_since(t0);
        ok[i] = 1;
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "warning: skipping " << path << ": " << e.what() << "\n";
      }
    }
  };

  const int workers = std::min<int>(bench_workers(a.threads), std::max<std::size_t>(files.size(), 1));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (ok[i]) rows.push_back(std::move(slots[i]));

  std::ostringstream body;
  if (a.format == "csv")
    write_csv(rows, body);
  else
    write_markdown(aggregate(rows), body);

  if (a.out.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream os(a.out);
    if (!os) {
      std::cerr << "error: cannot write " << a.out << "\n";
      return kExitInput;
    }
    os << body.str();
  }
  return kExitOk;
}

struct GenArgs {
  int n = 0, m = 0, p = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenArgs& a) {
  if (!(a.p >= 1 && a.p < a.m && a.m < a.n)) {
    std::cerr << "error: need 1 <= p < m < n (got n=" << a.n << " m=" << a.m << " p=" << a.p << ")\n";
    return kExitInput;
  }
  try {
    GeneratorConfig cfg;
    cfg.n = a.n;
    cfg.m = a.m;
    cfg.p = a.p;
    cfg.seed = a.seed;
    Instance inst = generate_instance(cfg);
    inst.name = fs::path(a.out).stem().string();
    write_instance(inst, a.out);
    std::cout << "wrote " << a.out << " (n=" << inst.n << " m=" << inst.m << " p=" << inst.p
              << " seed=" << a.seed << ")\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolve;
  }
}

struct OracleArgs {
  std::string path;
  std::string fmt = "auto";
  double cap = 1e8;
};

int cmd_oracle(const OracleArgs& a) {
  Instance inst;
  try {
    inst = load_instance(a.path, a.fmt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    OracleOptions oo;
    oo.max_work = a.cap;
    const OracleResult r = solve_exact(inst, oo);
    std::cout << "instance " << inst.name << " (n=" << inst.n << " m=" << inst.m << " p=" << inst.p << ")\n";
    std::cout << "optimal makespan " << r.makespan << " (enumerated " << r.work << " assignments)\n";
    print_schedule(std::cout, r.solution);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolve;
  }
}

struct ReportArgs {
  std::string path;
  std::string instance_path;
  std::string fmt = "auto";
};

int cmd_report(const ReportArgs& a) {
  SolutionRecord rec;
  try {
    rec = read_solution(a.path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  std::cout << "instance " << rec.meta.instance_name << "  stage " << rec.meta.stage << "\n";
  std::cout << "makespan " << rec.solution.makespan << "\n";
  print_bounds_line(std::cout, rec.bounds, rec.meta.wall_time_s);
  print_schedule(std::cout, rec.solution);
  if (!a.instance_path.empty()) {
    try {
      const Instance inst = load_instance(a.instance_path, a.fmt);
      const Time recomputed = evaluate(rec.solution, inst);
      if (recomputed != rec.solution.makespan)
        throw std::runtime_error("stored makespan " + std::to_string(rec.solution.makespan) +
                                 " != recomputed " + std::to_string(recomputed));
      std::cout << "verified against " << a.instance_path << ": consistent\n";
    } catch (const std::exception& e) {
      std::cerr << "error: verification failed: " << e.what() << "\n";
      return kExitSolve;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Makespan scheduling-location solver suite"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "Solve one instance (staged exact framework by default)");
  solve->add_option("instance", sa.path, "instance file")->required();
  solve->add_option("--stage", sa.stage, "ils|cg|afcg|afsubsetm|full|framework")
      ->check(CLI::IsMember({"ils", "cg", "afcg", "afsubsetm", "full", "framework"}))
      ->capture_default_str();
  solve->add_option("--time-limit", sa.time_limit, "per-stage limit in seconds")->capture_default_str();
  solve->add_option("--seed", sa.seed, "random seed")->capture_default_str();
  solve->add_option("--out", sa.out, "write the solution as JSON");
  solve->add_option("--format", sa.fmt, "instance layout")
      ->check(CLI::IsMember({"auto", "native", "lit"}))
      ->capture_default_str();
  solve->add_option("--dump-graph", sa.dump_graph_path, "write the reduced network, one `k j q r` arc per line");
  solve->add_option("--dump-lp", sa.dump_lp_path, "write the full model as LP text");
  solve->add_flag("--verbose", sa.verbose, "per-stage / per-iteration trace on stderr");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand("bench", "Solve a directory of instances and tabulate");
  bench->add_option("dir", ba.dir, "directory of instance files")->required();
  bench->add_option("--format", ba.format, "csv: one row per instance; md: grouped table")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  bench->add_option("--input-format", ba.fmt, "instance layout")
      ->check(CLI::IsMember({"auto", "native", "lit"}))
      ->capture_default_str();
  bench->add_option("--time-limit", ba.time_limit, "per-stage limit in seconds")->capture_default_str();
  bench->add_option("--seed", ba.seed, "random seed")->capture_default_str();
  bench->add_option("--threads", ba.threads, "parallel workers (default: SCHELOC_THREADS, else 1)");
  bench->add_option("--out", ba.out, "write the table to a file instead of stdout");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("generate", "Generate a planar instance (1 <= p < m < n)");
  gen->add_option("--n", ga.n, "jobs")->required();
  gen->add_option("--m", ga.m, "candidate locations")->required();
  gen->add_option("--p", ga.p, "machines to open")->required();
  gen->add_option("--seed", ga.seed, "random seed")->capture_default_str();
  gen->add_option("--out", ga.out, "output file (native format)")->required();

  OracleArgs oa;
  CLI::App* oracle = app.add_subcommand("oracle", "Brute-force exact reference (tiny instances)");
  oracle->add_option("instance", oa.path, "instance file")->required();
  oracle->add_option("--cap", oa.cap, "refuse enumerations beyond this many assignments")->capture_default_str();
  oracle->add_option("--format", oa.fmt, "instance layout")
      ->check(CLI::IsMember({"auto", "native", "lit"}))
      ->capture_default_str();

  ReportArgs ra;
  CLI::App* report = app.add_subcommand("report", "Render a saved solution");
  report->add_option("solution", ra.path, "solution JSON from solve --out")->required();
  report->add_option("--instance", ra.instance_path, "re-validate the schedule against this instance");
  report->add_option("--format", ra.fmt, "instance layout")
      ->check(CLI::IsMember({"auto", "native", "lit"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  if (*solve) return cmd_solve(sa);
  if (*bench) return cmd_bench(ba);
  if (*gen) return cmd_generate(ga);
  if (*oracle) return cmd_oracle(oa);
  return cmd_report(ra);
}
