// Acceptance gate: nine checks, one PASS/FAIL line each, exit 0 only when
// all pass. Every tolerance and threshold is pinned here, next to the check
// that uses it. Frozen thresholds that came from measurement say so in a
// comment with the measured value and the corpus seed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "scheloc/arcflow.hpp"
#include "scheloc/colgen.hpp"
#include "scheloc/framework.hpp"
#include "scheloc/heuristics.hpp"
#include "scheloc/io.hpp"
#include "scheloc/lp.hpp"
#include "scheloc/oracle.hpp"
#include "scheloc/rng.hpp"
#include "scheloc/schedule.hpp"

namespace {

using namespace scheloc;
using Clock = std::chrono::steady_clock;

// --- pinned tolerances and thresholds -------------------------------------
constexpr double kLpEqualTol = 1e-6;     // CG value vs full-model LP value
constexpr double kLbSlackTol = 1e-6;     // relaxation value vs integer optimum
constexpr double kDualityTol = 1e-6;     // relative strong-duality residual
constexpr double kC1BudgetS = 600.0;     // exact runs, total
constexpr double kIlsRunBudgetS = 1.0;   // single multistart run
constexpr int kIlsMatchMin = 180;        // 90% of 200
// LR gap zero on >= 77/200 of the small corpus: measured 87/200 on corpus
// seed 20260816 with the production horizon (local-search seed makespan),
// frozen at measured minus five percentage points.
constexpr int kLrGapZeroMin = 77;
constexpr int kStrictReductionMin = 160;  // 80% of 200; measured 200/200

constexpr std::uint64_t kSmallCorpusSeed = 20260816;  // criteria 1,5,6,7,9
constexpr std::uint64_t kCgCorpusSeed = 424242;       // criterion 4
constexpr int kSmallCorpusSize = 200;

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d (%s): %s -- %s\n", id, name, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// p random distinct locations, each job sent to a uniform one (independent
// of any construction heuristic).
Solution random_assignment(const Instance& inst, Rng& rng) {
  std::vector<int> all(inst.m);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> locs;
  for (int i = 0; i < inst.p; ++i) {
    const auto idx = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(all.size()) - 1));
    locs.push_back(all[idx]);
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  std::vector<std::vector<int>> bucket(locs.size());
  for (int j = 0; j < inst.n; ++j)
    bucket[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(locs.size()) - 1))].push_back(j);
  Solution s;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    if (bucket[i].empty()) continue;
    s.machines.push_back(erd_schedule(inst, locs[i], bucket[i]));
    s.makespan = std::max(s.makespan, s.machines.back().completion());
  }
  return s;
}

// From-scratch reference for one swap: exchange the jobs in plain sets and
// re-sequence every machine.
Time rebuild_makespan(const Instance& inst, const Solution& sol, const SwapEval& ev) {
  std::vector<std::vector<int>> sets(sol.machines.size());
  for (std::size_t i = 0; i < sol.machines.size(); ++i)
    for (const ScheduledJob& sj : sol.machines[i].jobs) sets[i].push_back(sj.job);
  std::swap(sets[static_cast<std::size_t>(ev.ma)][static_cast<std::size_t>(ev.ia)],
            sets[static_cast<std::size_t>(ev.mb)][static_cast<std::size_t>(ev.ib)]);
  Time mk = 0;
  for (std::size_t i = 0; i < sol.machines.size(); ++i)
    mk = std::max(mk, erd_schedule(inst, sol.machines[i].location, sets[i]).completion());
  return mk;
}

}  // namespace

int main() {
  lps::Audit audit;  // one audit across every LP/MIP of criteria 1-5

  // --- shared pass over the small corpus (criteria 1, 5, 6, 7, 9) ---------
  struct SmallRun {
    Instance inst;
    Time opt = 0;
  };
  std::vector<SmallRun> corpus;
  corpus.reserve(kSmallCorpusSize);
  {
    Rng rng(kSmallCorpusSeed);
    for (int i = 0; i < kSmallCorpusSize; ++i) {
      SmallRun r;
      r.inst = testutil::random_instance(rng);
      corpus.push_back(std::move(r));
    }
  }

  // Criterion 1: framework == oracle on the whole corpus, within budget.
  int c1_match = 0;
  long long c6_violations = 0;
  std::string c6_first;
  double exact_seconds = 0;
  {
    const auto t0 = Clock::now();
    for (int i = 0; i < kSmallCorpusSize; ++i) {
      SmallRun& run = corpus[static_cast<std::size_t>(i)];
      run.opt = solve_exact(run.inst).makespan;

      FrameworkOptions fo;
      fo.seed = static_cast<std::uint64_t>(i);
      fo.audit = &audit;
      const FrameworkResult res = run_framework(run.inst, fo);
      if (res.bounds.optimal && res.bounds.lb == run.opt && res.bounds.ub == run.opt &&
          res.best.makespan == run.opt && evaluate(res.best, run.inst) == run.opt)
        ++c1_match;

      // criterion 6 bookkeeping: full bound trajectory of this exact run
      Time lb = 0, ub = std::numeric_limits<Time>::max();
      for (const StageReport& st : res.stages) {
        const bool ok = st.lb >= lb && st.ub <= ub && st.lb <= st.ub && st.lb <= run.opt &&
                        (st.ub == std::numeric_limits<Time>::max() || st.ub >= run.opt);
        if (!ok) {
          ++c6_violations;
          if (c6_first.empty())
            c6_first = fmt("instance %d stage %s lb=%lld ub=%lld opt=%lld", i, st.stage.c_str(),
                           static_cast<long long>(st.lb), static_cast<long long>(st.ub),
                           static_cast<long long>(run.opt));
        }
        lb = st.lb;
        ub = st.ub;
      }
    }
    exact_seconds = seconds_since(t0);
    report(1, "oracle equivalence", c1_match == kSmallCorpusSize && exact_seconds < kC1BudgetS,
           fmt("%d/%d optimal, %.1fs (budget %.0fs)", c1_match, kSmallCorpusSize, exact_seconds,
               kC1BudgetS));
  }

  // Criterion 2: single-machine sequencing equals permutation brute force.
  {
    Rng rng(7001);
    testutil::InstanceParams pr;
    pr.n_min = 2;
    pr.n_max = 8;
    int match = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const Instance inst = testutil::random_instance(rng, pr);
      const int loc = static_cast<int>(rng.uniform_int(0, inst.m - 1));
      std::vector<int> jobs(static_cast<std::size_t>(inst.n));
      std::iota(jobs.begin(), jobs.end(), 0);
      const Time got = erd_schedule(inst, loc, jobs).completion();
      if (got == testutil::best_permutation_completion(inst, loc, jobs)) ++match;
    }
    report(2, "release-order optimality", match == 100, fmt("%d/100 equal", match));
  }

  // Criterion 3: constant-time swap evaluation equals rebuilds, and every
  // concatenation case fires.
  {
    Rng rng(7002);
    long long mismatches = 0, swaps = 0;
    SwapCaseCounter cases{};
    for (int t = 0; t < 20; ++t) {
      const Instance inst = testutil::random_instance(rng);
      for (int s = 0; s < 50; ++s) {
        const Solution sol = random_assignment(inst, rng);
        for (const SwapEval& ev : evaluate_all_swaps(inst, sol, &cases)) {
          ++swaps;
          if (ev.makespan != rebuild_makespan(inst, sol, ev)) ++mismatches;
        }
      }
    }
    int cases_hit = 0;
    for (const std::int64_t c : cases) cases_hit += c > 0;
    report(3, "swap delta soundness", mismatches == 0 && cases_hit == 14,
           fmt("%lld swaps, %lld mismatches, %d/14 cases hit", swaps, mismatches, cases_hit));
  }

  // Criterion 4: column generation equals the full-model LP, never exceeds
  // the optimum, and reaches LR gap zero often enough on the small corpus.
  {
    Rng rng(kCgCorpusSeed);
    int equal = 0, sound = 0, proven = 0;
    for (int rep = 0; rep < 50; ++rep) {
      testutil::InstanceParams pr;
      pr.n_min = 6;
      pr.n_max = 15;
      Instance inst = testutil::random_instance(rng, pr);
      if (inst.n >= 13 && inst.p > 2) inst.p = 2;  // keeps the reference enumerable
      const Solution seed = local_search(inst, construct_deterministic(inst));
      const ArcFlowGraph g = build_graph(inst, seed.makespan);
      CgLimits cl;
      cl.audit = &audit;
      const CgResult cg = run_colgen(g, inst, seed, cl);
      if (!cg.proven) continue;
      ++proven;

      const AfModel full = build_model(g, inst);
      lps::SimplexOptions so;
      so.audit = &audit;
      const lps::LpResult ref = lps::solve_lp(full.lp, so);
      if (ref.status == lps::LpStatus::Optimal && std::abs(cg.value - ref.objective) <= kLpEqualTol)
        ++equal;

      OracleOptions oo;
      oo.max_work = 5e8;
      const Time opt = solve_exact(inst, oo).makespan;
      if (cg.value <= static_cast<double>(opt) + kLbSlackTol) ++sound;
      if (!(cg.value <= static_cast<double>(opt) + kLbSlackTol) ||
          seed.makespan < opt) {
        ++c6_violations;
        if (c6_first.empty()) c6_first = fmt("cg corpus rep %d bound crossing", rep);
      }
    }

    int gap_zero = 0;
    for (const SmallRun& run : corpus) {
      const Solution seed = local_search(run.inst, construct_deterministic(run.inst));
      const ArcFlowGraph g = build_graph(run.inst, seed.makespan);
      CgLimits cl;
      cl.audit = &audit;
      const CgResult cg = run_colgen(g, run.inst, seed, cl);
      if (cg.proven && cg.value >= static_cast<double>(run.opt) - kLbSlackTol) ++gap_zero;
      if (cg.proven && cg.value > static_cast<double>(run.opt) + kLbSlackTol) ++c6_violations;
    }
    report(4, "column generation",
           proven == 50 && equal == 50 && sound == 50 && gap_zero >= kLrGapZeroMin,
           fmt("proven %d/50, equal-to-full-LP %d/50, bound-sound %d/50, LR gap zero %d/%d "
               "(floor %d)",
               proven, equal, sound, gap_zero, kSmallCorpusSize, kLrGapZeroMin));
  }

  // Criterion 5: best of ten multistart runs matches the optimum on >= 90%,
  // every single run under a second.
  {
    int matched = 0;
    double worst_run = 0;
    long long slow_runs = 0;
    for (int i = 0; i < kSmallCorpusSize; ++i) {
      const SmallRun& run = corpus[static_cast<std::size_t>(i)];
      Time best = std::numeric_limits<Time>::max();
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        IlsOptions io_;
        io_.seed = seed;
        const auto t0 = Clock::now();
        const IlsResult r = run_ils(run.inst, io_);
        const double dt = seconds_since(t0);
        worst_run = std::max(worst_run, dt);
        if (dt >= kIlsRunBudgetS) ++slow_runs;
        best = std::min(best, r.best.makespan);
        if (r.best.makespan < run.opt) ++c6_violations;  // criterion 6: UB >= opt
      }
      if (best == run.opt) ++matched;
    }
    report(5, "multistart search quality", matched >= kIlsMatchMin && slow_runs == 0,
           fmt("%d/%d optimal (floor %d), worst run %.3fs", matched, kSmallCorpusSize,
               kIlsMatchMin, worst_run));
  }

  // Criterion 6: bound trajectories collected in criteria 1-5.
  report(6, "bound soundness", c6_violations == 0,
         c6_violations == 0 ? "no violations"
                            : fmt("%lld violations, first: %s", c6_violations, c6_first.c_str()));

  // Criterion 7: every LP certified by strong duality, every incumbent
  // re-validated independently.
  {
    const bool pass = audit.lp_solves > 0 && audit.incumbents_checked > 0 &&
                      audit.incumbent_failures == 0 && audit.max_rel_duality_gap <= kDualityTol &&
                      audit.max_row_violation <= kDualityTol &&
                      audit.max_bound_violation <= kDualityTol;
    report(7, "solver self-consistency", pass,
           fmt("%lld LPs (worst duality residual %.2e), %lld incumbents, %lld failures",
               static_cast<long long>(audit.lp_solves), audit.max_rel_duality_gap,
               static_cast<long long>(audit.incumbents_checked),
               static_cast<long long>(audit.incumbent_failures)));
  }

  // Criterion 8: generator fidelity on thirty full-scale shapes.
  {
    int ok_bounds = 0, ok_euclid = 0, ok_bytes = 0, total = 0;
    for (const int n : {100, 200, 300}) {
      for (const int m : {n / 10, n / 5}) {
        for (const int p : {2, 3, 5, m / 2, 3 * m / 4}) {
          ++total;
          GeneratorConfig cfg;
          cfg.n = n;
          cfg.m = m;
          cfg.p = p;
          cfg.seed = static_cast<std::uint64_t>(total);
          const Instance a = generate_instance(cfg);

          const Time p_lo = std::max<Time>(1, n / 10), p_hi = std::max<Time>(1, n / 2);
          bool bounds = true;
          for (const Time v : a.proc) bounds = bounds && v >= p_lo && v <= p_hi;
          ok_bounds += bounds;

          bool euclid = static_cast<int>(a.job_xy.size()) == n && static_cast<int>(a.loc_xy.size()) == m;
          for (int j = 0; euclid && j < n; ++j)
            for (int k = 0; k < m; ++k) {
              const double dx = a.job_xy[static_cast<std::size_t>(j)][0] - a.loc_xy[static_cast<std::size_t>(k)][0];
              const double dy = a.job_xy[static_cast<std::size_t>(j)][1] - a.loc_xy[static_cast<std::size_t>(k)][1];
              if (a.release[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] !=
                  static_cast<Time>(std::floor(std::hypot(dx, dy)))) {
                euclid = false;
                break;
              }
            }
          ok_euclid += euclid;

          const Instance b = generate_instance(cfg);
          std::ostringstream sa, sb;
          write_instance(a, sa);
          write_instance(b, sb);
          ok_bytes += sa.str() == sb.str() && !sa.str().empty();
        }
      }
    }
    report(8, "generator fidelity", total == 30 && ok_bounds == 30 && ok_euclid == 30 && ok_bytes == 30,
           fmt("%d shapes: bounds %d/30, floored distances %d/30, byte-identical %d/30", total,
               ok_bounds, ok_euclid, ok_bytes));
  }

  // Criterion 9: the reduced network never exceeds the naive arc count and
  // is strictly smaller on at least 80% (measured 200/200 on this corpus).
  {
    int le = 0, strict = 0;
    for (const SmallRun& run : corpus) {
      const ArcFlowGraph g = build_graph(run.inst, run.opt);
      const std::size_t reduced = g.real_arc_count();
      const std::size_t naive = unreduced_arc_bound(run.inst, run.opt);
      le += reduced <= naive;
      strict += reduced < naive;
    }
    report(9, "graph reduction", le == kSmallCorpusSize && strict >= kStrictReductionMin,
           fmt("within bound %d/%d, strictly smaller %d/%d (floor %d)", le, kSmallCorpusSize,
               strict, kSmallCorpusSize, kStrictReductionMin));
  }

  if (g_failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
