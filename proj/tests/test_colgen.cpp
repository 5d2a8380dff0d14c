#include "scheloc/colgen.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "scheloc/arcflow.hpp"
#include "scheloc/oracle.hpp"
#include "scheloc/schedule.hpp"

using namespace scheloc;

namespace {

// Deterministic multi-machine seed: open locations 0..p-1, send each job to
// the opened location with its smallest release date, sequence canonically.
Solution simple_seed(const Instance& inst) {
  std::vector<std::vector<int>> bucket(inst.p);
  for (int j = 0; j < inst.n; ++j) {
    int best = 0;
    for (int k = 1; k < inst.p; ++k)
      if (inst.rel(j, k) < inst.rel(j, best)) best = k;
    bucket[best].push_back(j);
  }
  Solution s;
  for (int k = 0; k < inst.p; ++k) {
    if (bucket[k].empty()) continue;
    s.machines.push_back(erd_schedule(inst, k, bucket[k]));
    s.makespan = std::max(s.makespan, s.machines.back().completion());
  }
  return s;
}

}  // namespace

TEST_CASE("pricing formula matches the simplex reduced costs of in-model columns") {
  Rng rng(2026);
  for (int rep = 0; rep < 12; ++rep) {
    const Instance inst = testutil::random_instance(rng);
    const Solution seed = simple_seed(inst);
    const ArcFlowGraph g = build_graph(inst, seed.makespan);
    const AfModel md = build_model(g, inst);
    const lps::LpResult lp = lps::solve_lp(md.lp);
    REQUIRE(lp.status == lps::LpStatus::Optimal);
    const DualValues duals = extract_duals(md, lp);
    for (std::size_t c = md.first_arc_col; c < md.arc_cols.size() + md.first_arc_col; ++c) {
      const AfModel::ColRef ref = md.arc_cols[c - md.first_arc_col];
      if (ref.job < 0) continue;  // dummy arcs have their own (cheaper) price; not used by pricing
      const Arc arc = g.job_arcs[ref.ki][ref.job][ref.arc];
      CHECK(std::abs(reduced_cost(g, duals, ref.ki, ref.job, arc) - lp.reduced_costs[c]) <= 1e-6);
    }
  }
}

TEST_CASE("column selection keeps the strongest candidates per pair, deterministically") {
  std::vector<CgCandidate> neg = {
      {0, 0, 0, -1.0}, {0, 0, 1, -3.0}, {0, 0, 2, -2.0},  // pair (0,0)
      {1, 2, 0, -9.0},                                    // global best, lone pair
      {0, 1, 0, -0.5}, {0, 1, 1, -0.5},                   // rc tie inside a pair
  };
  const auto kept = select_columns(neg, 2);
  REQUIRE(kept.size() == 6 - 1);  // pair (0,0) loses its weakest member
  CHECK(kept[0].rc == -9.0);      // most negative first
  // pair (0,0): -3 then -2 survive, -1 dropped
  int pair00 = 0;
  for (const auto& c : kept)
    if (c.ki == 0 && c.job == 0) {
      ++pair00;
      CHECK(c.rc <= -2.0);
    }
  CHECK(pair00 == 2);
  // the tied pair keeps both, ordered by arc index
  const auto tie = std::find_if(kept.begin(), kept.end(), [](const CgCandidate& c) { return c.job == 1; });
  REQUIRE(tie != kept.end());
  CHECK(tie->arc == 0);
}

TEST_CASE("seed pool mirrors the seed schedule and rejects foreign input") {
  Rng rng(99);
  const Instance inst = testutil::random_instance(rng);
  const Solution seed = simple_seed(inst);
  const ArcFlowGraph g = build_graph(inst, seed.makespan);

  const ArcSubset pool = seed_pool(g, seed);
  CHECK(pool.size() == static_cast<std::size_t>(inst.n));

  SUBCASE("location outside a restricted graph") {
    std::vector<int> others;
    for (int k = 0; k < inst.m; ++k)
      if (k >= inst.p) others.push_back(k);
    const ArcFlowGraph sub = build_graph(inst, seed.makespan + 20, others);
    CHECK_THROWS_AS(seed_pool(sub, seed), std::logic_error);
  }
  SUBCASE("start time that is not an arc") {
    Solution shifted = seed;
    shifted.machines[0].jobs[0].start += 1000;  // far beyond the horizon
    CHECK_THROWS_AS(seed_pool(g, shifted), std::logic_error);
  }
}

TEST_CASE("column generation reproduces the full LP bound and stays below the optimum") {
  Rng rng(777);
  int proven_runs = 0;
  for (int rep = 0; rep < 30; ++rep) {
    testutil::InstanceParams pr;
    pr.n_max = 12;
    const Instance inst = testutil::random_instance(rng, pr);
    const Solution seed = simple_seed(inst);
    const ArcFlowGraph g = build_graph(inst, seed.makespan);

    const CgResult res = run_colgen(g, inst, seed);
    REQUIRE(res.final_status == lps::LpStatus::Optimal);
    REQUIRE(res.proven);
    ++proven_runs;

    const AfModel full = build_model(g, inst);
    const lps::LpResult full_lp = lps::solve_lp(full.lp);
    REQUIRE(full_lp.status == lps::LpStatus::Optimal);
    CHECK(std::abs(res.value - full_lp.objective) <= 1e-6);

    const OracleResult opt = solve_exact(inst);
    CHECK(res.value <= static_cast<double>(opt.makespan) + 1e-6);

    CHECK(res.pool.size() >= static_cast<std::size_t>(inst.n));
    CHECK(res.pool.size() <= g.real_arc_count());
    for (std::size_t i = 1; i < res.trace.size(); ++i)
      CHECK(res.trace[i].master_value <= res.trace[i - 1].master_value + 1e-7);
  }
  CHECK(proven_runs == 30);
}

TEST_CASE("column generation is deterministic and honors its limits") {
  Rng rng(31);
  testutil::InstanceParams pr;
  pr.n_min = 8;
  pr.n_max = 10;
  const Instance inst = testutil::random_instance(rng, pr);
  const Solution seed = simple_seed(inst);
  const ArcFlowGraph g = build_graph(inst, seed.makespan);

  SUBCASE("replay gives an identical run") {
    const CgResult a = run_colgen(g, inst, seed);
    const CgResult b = run_colgen(g, inst, seed);
    CHECK(a.value == b.value);
    CHECK(a.pool.size() == b.pool.size());
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].master_value == b.trace[i].master_value);
      CHECK(a.trace[i].added == b.trace[i].added);
    }
  }
  SUBCASE("iteration cap stops after one master solve") {
    CgLimits lim;
    lim.max_iterations = 1;
    const CgResult res = run_colgen(g, inst, seed, lim);
    CHECK(res.trace.size() <= 1);
    const AfModel full = build_model(g, inst);
    const lps::LpResult full_lp = lps::solve_lp(full.lp);
    // restricted master never undercuts the full relaxation
    CHECK(res.value >= full_lp.objective - 1e-7);
  }
  SUBCASE("trace stream receives one line per iteration") {
    std::ostringstream out;
    CgLimits lim;
    lim.trace = &out;
    const CgResult res = run_colgen(g, inst, seed, lim);
    std::size_t lines = 0;
    for (char ch : out.str()) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == res.trace.size());
    CHECK(out.str().rfind("cg iter 0:", 0) == 0);
  }
}

TEST_CASE("audited column generation certifies every master solve") {
  Rng rng(55);
  const Instance inst = testutil::random_instance(rng);
  const Solution seed = simple_seed(inst);
  const ArcFlowGraph g = build_graph(inst, seed.makespan);
  lps::Audit audit;
  CgLimits lim;
  lim.audit = &audit;
  const CgResult res = run_colgen(g, inst, seed, lim);
  REQUIRE(res.proven);
  CHECK(audit.lp_solves == static_cast<long long>(res.trace.size()));
  CHECK(audit.max_rel_duality_gap <= 1e-6);
  CHECK(audit.max_row_violation <= 1e-6);
}
