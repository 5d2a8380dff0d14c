#pragma once

#include "scheloc/instance.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

struct OracleOptions {
  // Refuse instances whose enumeration size C(m,p) * p^n exceeds this.
  double max_work = 1e8;
};

struct OracleResult {
  Time makespan = 0;
  Solution solution;
  double work = 0;  // C(m,p) * p^n actually enumerated
};

// Exhaustive reference solver: enumerates every p-subset of locations
// (lexicographic) and every job->machine assignment (odometer over jobs,
// last job fastest), sequencing each machine by the earliest release date
// rule. First assignment attaining the minimum is kept, so the result is
// deterministic. Intended as ground truth for tests and small instances
// only; throws std::runtime_error when the work cap is exceeded.
OracleResult solve_exact(const Instance& inst, const OracleOptions& opt = {});

}  // namespace scheloc
