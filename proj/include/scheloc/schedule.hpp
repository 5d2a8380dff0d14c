#pragma once

#include <vector>

#include "scheloc/instance.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

// Canonical job order on a machine at location k: release date ascending,
// ties by processing time descending, then job index ascending (earliest
// release date rule with a fixed tie-break). Every construction in this
// code base sorts with this comparator so that equal-makespan schedules are
// bit-identical across components and always correspond to arcs of the
// reduced arc-flow graph.
inline bool erd_before(const Instance& inst, int location, int a, int b) {
  const Time ra = inst.rel(a, location), rb = inst.rel(b, location);
  if (ra != rb) return ra < rb;
  if (inst.proc[a] != inst.proc[b]) return inst.proc[a] > inst.proc[b];
  return a < b;
}

// Sequences `jobs` on a machine at `location` by the canonical order and
// assigns semi-active start times: start = max(release, previous completion).
// Sequencing by release date minimises the machine's completion time.
MachineSchedule erd_schedule(const Instance& inst, int location, std::vector<int> jobs);

// Recomputes and returns the makespan, checking every solution invariant:
// each job scheduled exactly once, at most p machines on distinct valid
// locations, non-decreasing release order per machine, semi-active timings.
// Throws std::invalid_argument naming the first violation.
Time evaluate(const Solution& sol, const Instance& inst);

// Valid makespan lower bound: ceil(sum of processing times / p) plus the
// smallest release date anywhere. No machine set and assignment can beat
// perfect load balance starting at the globally earliest release.
Time initial_lower_bound(const Instance& inst);

// 100 * (ub - lb) / lb. Requires lb > 0 (throws std::domain_error otherwise).
double percent_gap(double ub, double lb);

// 100 * (opt - lb) / opt: relative weakness of a linear-relaxation bound lb
// against the optimum. Requires opt > 0 (throws std::domain_error otherwise).
double lr_gap(double opt, double lb);

// Smallest integer >= v up to a relative safety margin of 1e-6 * (1 + |v|),
// so a relaxation value polluted by solver tolerances still rounds to a
// valid integral lower bound.
Time safe_ceil(double v);

}  // namespace scheloc
