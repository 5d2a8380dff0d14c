#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scheloc/instance.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

// Completion bookkeeping for a block of consecutive jobs on one machine:
// `work` is the block's total processing time, `ready` the earliest time it
// could start (driven by the release dates inside it); the block finishes at
// ready + work. Blocks compose associatively, so any subsequence statistic
// follows from the single-job ones. {0, 0} is the empty block; it relies on
// release dates being nonnegative, which the instance validation enforces.
struct SeqStat {
  Time work = 0;
  Time ready = 0;
  Time completion() const { return ready + work; }
};

inline SeqStat concat(SeqStat a, SeqStat b) {
  return {a.work + b.work, std::max(b.ready - a.work, a.ready)};
}

inline SeqStat job_stat(const Instance& inst, int location, int job) {
  return {inst.proc[job], inst.rel(job, location)};
}

// Concatenation shapes hit while re-evaluating one side of a swap. The
// entering job's canonical slot either precedes (or equals) the leaving
// job's position -- ids 1..7 -- or strictly follows it -- ids 8..14. Within
// each regime the id is determined by which of the three surrounding blocks
// (prefix, middle, suffix) are nonempty; the single-job machine, where all
// three are empty, folds into the first id of its regime.
using SwapCaseCounter = std::array<std::int64_t, 14>;

// One cross-machine swap evaluated in O(1) from subsequence statistics.
struct SwapEval {
  int ma = 0, ia = 0;  // machine index within the solution, position in its sequence
  int mb = 0, ib = 0;
  Time comp_a = 0, comp_b = 0;  // new completions of the two touched machines
  Time makespan = 0;            // resulting overall makespan
  int case_a = 0, case_b = 0;   // concatenation case hit on each side (1..14)
};

// Every swap of two jobs on distinct machines, priced without rebuilding any
// schedule. Exposed so tests can cross-check the deltas against full
// rebuilds; local_search runs on the same engine.
std::vector<SwapEval> evaluate_all_swaps(const Instance& inst, const Solution& sol,
                                         SwapCaseCounter* cases = nullptr);

struct LocalSearchStats {
  std::int64_t rounds = 0;
  std::int64_t moves_applied = 0;
  std::int64_t evaluations = 0;  // swap evaluations; each tallies two cases
  SwapCaseCounter cases{};
};

// Steepest-descent swap search: evaluates every cross-machine job exchange,
// applies the best strictly improving one (first in scan order on ties),
// and repeats until none improves. Machines keep their location and their
// job count; sequences stay canonically ordered throughout.
Solution local_search(const Instance& inst, const Solution& sol, LocalSearchStats* stats = nullptr);

// Release-guided location pick: every job votes for its closest location
// (smallest release date, ties to the lowest id; with as many locations as
// jobs, a job may not vote for the location sharing its id), votes are
// scanned by nondecreasing release date, and the first `count` distinct
// locations win. When a scan runs out of votes, the voting repeats over the
// locations still unchosen.
std::vector<int> deterministic_locations(const Instance& inst, int count);

// Greedy assignment over fixed open locations: per location find the job
// that could start earliest given the machine's current load (ties to the
// largest processing time), then commit the candidate pair finishing
// earliest; repeat until all jobs are placed, then sequence each machine
// canonically. Locations left without jobs are dropped from the result.
Solution construct_with_locations(const Instance& inst, const std::vector<int>& locations);
Solution construct_deterministic(const Instance& inst);

struct IlsOptions {
  int n_iter = 10;  // starts; the last one opens the deterministic locations
  int n_ils = 100;  // consecutive non-improving perturbations allowed
  std::uint64_t seed = 0;
  LocalSearchStats* stats = nullptr;  // aggregated over every search, if set
};

struct IlsResult {
  Solution best;
  int best_start = -1;               // start that produced `best` (first on ties)
  std::vector<Time> start_makespan;  // incumbent makespan of each start
};

// Multistart iterated local search. Each start runs its own derived random
// stream, so any start's trajectory is reproducible in isolation. A start
// alternates full local search with a perturbation that relocates every
// open machine to a random unoccupied location; an improvement over the
// start's incumbent adopts the solution and resets the patience counter.
IlsResult run_ils(const Instance& inst, const IlsOptions& opt = {});

}  // namespace scheloc
