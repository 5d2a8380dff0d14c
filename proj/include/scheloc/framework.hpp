#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scheloc/heuristics.hpp"
#include "scheloc/instance.hpp"
#include "scheloc/lp.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

struct StageReport {
  std::string stage;  // lb, ils, cg, af_cg, af_subset_m, af_full
  bool ran = false;   // false: skipped (gap already closed or prerequisite failed)
  double seconds = 0;
  Time lb = 0;        // bounds state after the stage
  Time ub = 0;        // max() while no feasible solution exists yet
  std::string note;   // diagnostics: pool sizes, node counts, failure text
};

struct FrameworkOptions {
  double stage_time_limit_s = 300;      // full-model integer search cap
  double heuristic_time_limit_s = 120;  // restricted integer search caps
  double cg_time_limit_s = 300;         // column generation cap
  int ils_n_iter = 10;
  int ils_n_ils = 100;
  std::uint64_t seed = 0;  // drives the multistart and the random location subset
  lps::Audit* audit = nullptr;
  std::ostream* trace = nullptr;  // one line per stage when set
};

struct FrameworkResult {
  Solution best;
  Bounds bounds;
  std::vector<StageReport> stages;
  std::string closed_by;  // stage whose update proved lb == ub; empty when open
};

// Staged exact solver: cheap bound and multistart search first, then column
// generation for the lower bound, then increasingly expensive integer
// searches (pooled columns, location subset, full model), stopping as soon
// as the bounds meet. The lower bound only moves on proven evidence: the
// converged relaxation value or the full model's dual bound, both rounded
// up through a safety margin scaled like the solver tolerances. Restricted
// searches update the upper bound only. A stage that throws is recorded and
// skipped; later stages still run.
FrameworkResult run_framework(const Instance& inst, const FrameworkOptions& opt = {});

}  // namespace scheloc
