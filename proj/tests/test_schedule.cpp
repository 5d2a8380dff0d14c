#include <doctest.h>

#include <stdexcept>

#include "helpers.hpp"
#include "scheloc/schedule.hpp"

using namespace scheloc;

namespace {

Instance two_loc_instance() {
  Instance inst;
  inst.name = "hand";
  inst.n = 4;
  inst.m = 3;
  inst.p = 2;
  inst.proc = {2, 3, 1, 2};
  inst.release = {
      {0, 5, 1},
      {1, 0, 4},
      {1, 2, 0},
      {4, 1, 2},
  };
  inst.validate();
  return inst;
}

}  // namespace

TEST_CASE("erd_schedule sequences by release and packs semi-actively") {
  Instance inst = two_loc_instance();

  // location 0: releases j0=0 j1=1 j2=1 j3=4; tie j1/j2 broken by longer
  // processing time first (p1=3 > p2=1)
  MachineSchedule ms = erd_schedule(inst, 0, {2, 3, 0, 1});
  REQUIRE(ms.jobs.size() == 4);
  CHECK(ms.jobs[0].job == 0);
  CHECK(ms.jobs[1].job == 1);
  CHECK(ms.jobs[2].job == 2);
  CHECK(ms.jobs[3].job == 3);
  CHECK(ms.jobs[0].start == 0);
  CHECK(ms.jobs[0].completion == 2);
  CHECK(ms.jobs[1].start == 2);  // released at 1, waits for the machine
  CHECK(ms.jobs[1].completion == 5);
  CHECK(ms.jobs[2].start == 5);
  CHECK(ms.jobs[2].completion == 6);
  CHECK(ms.jobs[3].start == 6);
  CHECK(ms.jobs[3].completion == 8);
  CHECK(ms.completion() == 8);

  CHECK(erd_schedule(inst, 1, {}).completion() == 0);
}

TEST_CASE("erd tie-break is release asc, processing desc, index asc") {
  Instance inst;
  inst.n = 3;
  inst.m = 2;
  inst.p = 1;
  inst.proc = {2, 2, 5};
  inst.release = {{3, 0}, {3, 0}, {3, 0}};
  inst.validate();

  MachineSchedule ms = erd_schedule(inst, 0, {0, 1, 2});
  CHECK(ms.jobs[0].job == 2);  // longest first among equal releases
  CHECK(ms.jobs[1].job == 0);  // equal (r, p): lower index first
  CHECK(ms.jobs[2].job == 1);
}

TEST_CASE("erd_schedule matches permutation brute force on a machine") {
  Rng rng(4217);
  for (int trial = 0; trial < 60; ++trial) {
    testutil::InstanceParams pr;
    pr.n_min = 1;
    pr.n_max = 7;
    Instance inst = testutil::random_instance(rng, pr);

    std::vector<int> jobs(inst.n);
    for (int j = 0; j < inst.n; ++j) jobs[j] = j;
    const int k = static_cast<int>(rng.uniform_int(0, inst.m - 1));

    const Time ours = erd_schedule(inst, k, jobs).completion();
    const Time ref = testutil::best_permutation_completion(inst, k, jobs);
    CHECK(ours == ref);
  }
}

TEST_CASE("evaluate recomputes makespan and flags violations") {
  Instance inst = two_loc_instance();

  Solution sol;
  sol.machines.push_back(erd_schedule(inst, 0, {0, 1}));
  sol.machines.push_back(erd_schedule(inst, 1, {2, 3}));
  sol.makespan = std::max(sol.machines[0].completion(), sol.machines[1].completion());
  CHECK(evaluate(sol, inst) == sol.makespan);

  SUBCASE("duplicated job") {
    sol.machines[1] = erd_schedule(inst, 1, {2, 3, 0});
    sol.makespan = std::max(sol.machines[0].completion(), sol.machines[1].completion());
    CHECK_THROWS_WITH_AS(evaluate(sol, inst), doctest::Contains("twice"), std::invalid_argument);
  }
  SUBCASE("missing job") {
    sol.machines[1] = erd_schedule(inst, 1, {2});
    sol.makespan = std::max(sol.machines[0].completion(), sol.machines[1].completion());
    CHECK_THROWS_WITH_AS(evaluate(sol, inst), doctest::Contains("missing"), std::invalid_argument);
  }
  SUBCASE("too many machines") {
    sol.machines[1] = erd_schedule(inst, 1, {2});
    sol.machines.push_back(erd_schedule(inst, 2, {3}));
    CHECK_THROWS_WITH_AS(evaluate(sol, inst), doctest::Contains("at most p"), std::invalid_argument);
  }
  SUBCASE("repeated location") {
    sol.machines[1].location = 0;
    CHECK_THROWS_AS(evaluate(sol, inst), std::invalid_argument);
  }
  SUBCASE("non-semi-active start") {
    sol.machines[0].jobs[1].start += 1;
    sol.machines[0].jobs[1].completion += 1;
    CHECK_THROWS_WITH_AS(evaluate(sol, inst), doctest::Contains("semi-active"), std::invalid_argument);
  }
  SUBCASE("release order broken") {
    std::swap(sol.machines[0].jobs[0], sol.machines[0].jobs[1]);
    CHECK_THROWS_AS(evaluate(sol, inst), std::invalid_argument);
  }
  SUBCASE("stale stored makespan") {
    sol.makespan += 2;
    CHECK_THROWS_WITH_AS(evaluate(sol, inst), doctest::Contains("stored makespan"), std::invalid_argument);
  }
}

TEST_CASE("initial lower bound: balanced load plus earliest release") {
  Instance inst = two_loc_instance();
  // sum p = 8, p = 2 -> 4; min release = 0
  CHECK(initial_lower_bound(inst) == 4);

  inst.proc = {2, 3, 2, 2};  // sum 9 -> ceil(9/2) = 5
  for (auto& row : inst.release)
    for (auto& v : row) v += 3;  // min release now 3
  CHECK(initial_lower_bound(inst) == 8);
}

TEST_CASE("gap formulas") {
  CHECK(percent_gap(12, 10) == doctest::Approx(20.0));
  CHECK(percent_gap(10, 10) == doctest::Approx(0.0));
  CHECK_THROWS_AS(percent_gap(5, 0), std::domain_error);
  CHECK(lr_gap(10, 9) == doctest::Approx(10.0));
  CHECK_THROWS_AS(lr_gap(0, 0), std::domain_error);
}
