#pragma once

#include <cstdint>
#include <vector>

#include "scheloc/lp.hpp"

namespace scheloc::lps {

enum class MipStatus { Optimal, Feasible, Infeasible, NoSolution };

struct MipOptions {
  double time_limit_s = 300.0;
  std::int64_t node_limit = -1;  // -1 = unlimited
  // Branching picks the highest priority class first, then the most
  // fractional variable; empty means one class for everything.
  std::vector<int> branch_priority;
  // Set when every integer-feasible point has an integral objective; lets
  // pruning use ceil(node bound).
  bool objective_integral = false;
  SimplexOptions lp;
  Audit* audit = nullptr;
};

struct MipResult {
  MipStatus status = MipStatus::NoSolution;
  std::vector<double> x;  // incumbent, empty when none found
  double objective = 0;   // incumbent objective (minimization sense of the input)
  double bound = 0;       // proven dual bound, -inf when nothing was proven
  std::int64_t nodes = 0;
};

// Depth-first branch and bound on variable bounds; every node solves its LP
// relaxation from scratch with solve_lp. Deterministic for a fixed input.
// Every 10000 nodes the deepest-first discipline restarts from the open node
// with the weakest bound, which keeps the proven bound moving on hard trees.
//
// `integer_mask[j] != 0` marks columns that must be integral. `warm_start`,
// when given, must be a feasible integral point (checked; rejected with
// std::invalid_argument naming the violation) and becomes the initial
// incumbent. With time_limit_s == 0 the warm start is returned immediately
// as a Feasible result with bound -inf. Maximization inputs are not
// supported (minimize, or negate the objective).
MipResult solve_mip(const LinearProgram& lp, const std::vector<char>& integer_mask,
                    const std::vector<double>* warm_start = nullptr, const MipOptions& opt = {});

}  // namespace scheloc::lps
