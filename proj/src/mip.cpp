#include "scheloc/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scheloc::lps {

namespace {

constexpr double kIntTol = 1e-6;

struct Node {
  int var = -1;  // branching variable, -1 for the root
  double lo = 0, hi = 0;
  int parent = -1;
  double inherited = -kInf;  // LP bound of the parent, valid for the subtree
};

// Validates a warm start against bounds, rows and integrality; throws with
// the first violation spelled out.
void check_warm_start(const LinearProgram& lp, const std::vector<char>& mask, const std::vector<double>& x) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("mip warm start: " + msg); };
  if (x.size() != static_cast<std::size_t>(lp.num_cols()))
    fail("has " + std::to_string(x.size()) + " values, model has " + std::to_string(lp.num_cols()) + " columns");
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (x[j] < lp.lo[j] - kIntTol || x[j] > lp.hi[j] + kIntTol)
      fail("column " + std::to_string(j) + " value " + std::to_string(x[j]) + " outside bounds");
    if (j < static_cast<int>(mask.size()) && mask[j] && std::abs(x[j] - std::round(x[j])) > kIntTol)
      fail("column " + std::to_string(j) + " value " + std::to_string(x[j]) + " not integral");
  }
  std::vector<double> act(lp.num_rows(), 0.0);
  for (int j = 0; j < lp.num_cols(); ++j)
    for (int t = lp.col_begin[j]; t < lp.col_begin[j + 1]; ++t) act[lp.row_index[t]] += lp.value[t] * x[j];
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double tol = kIntTol * (1.0 + std::abs(lp.rhs[i]));
    const bool ok = lp.sense[i] == RowSense::LE   ? act[i] <= lp.rhs[i] + tol
                    : lp.sense[i] == RowSense::GE ? act[i] >= lp.rhs[i] - tol
                                                  : std::abs(act[i] - lp.rhs[i]) <= tol;
    if (!ok)
      fail("row " + std::to_string(i) + " activity " + std::to_string(act[i]) + " violates rhs " + std::to_string(lp.rhs[i]));
  }
}

double objective_of(const LinearProgram& lp, const std::vector<double>& x) {
  double v = 0;
  for (int j = 0; j < lp.num_cols(); ++j) v += lp.obj[j] * x[j];
  return v;
}

}  // namespace

MipResult solve_mip(const LinearProgram& lp, const std::vector<char>& integer_mask,
                    const std::vector<double>* warm_start, const MipOptions& opt) {
  if (lp.maximize) throw std::invalid_argument("mip: maximize objectives are not supported");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  MipResult res;
  res.bound = -kInf;

  if (warm_start) {
    check_warm_start(lp, integer_mask, *warm_start);
    res.x = *warm_start;
    res.objective = objective_of(lp, res.x);
    res.status = MipStatus::Feasible;
    if (opt.audit) opt.audit->check_incumbent(lp, res.x, integer_mask);
  }
  if (opt.time_limit_s <= 0.0) return res;  // warm start (if any) is the incumbent

  // effective bound tightening happens through per-node copies of lo/hi
  LinearProgram work = lp;

  std::vector<Node> arena;
  arena.push_back({});  // root
  std::vector<int> open = {0};

  double incumbent = warm_start ? res.objective : kInf;
  std::vector<double> best_x = res.x;

  // best objective an integer point below this node could still have
  auto node_cutoff = [&](double lp_obj) {
    return opt.objective_integral ? std::ceil(lp_obj - kIntTol) : lp_obj;
  };

  std::vector<int> chain;
  std::int64_t since_restart = 0;
  bool limits_hit = false;

  while (!open.empty()) {
    if (opt.time_limit_s > 0 && elapsed() > opt.time_limit_s) {
      limits_hit = true;
      break;
    }
    if (opt.node_limit >= 0 && res.nodes >= opt.node_limit) {
      limits_hit = true;
      break;
    }
    if (++since_restart >= 10000) {
      // hop to the weakest open node so the global bound keeps improving
      since_restart = 0;
      std::size_t best_i = open.size() - 1;
      for (std::size_t i = 0; i < open.size(); ++i)
        if (arena[open[i]].inherited < arena[open[best_i]].inherited) best_i = i;
      std::swap(open[best_i], open.back());
    }

    const int node_id = open.back();
    open.pop_back();
    const Node& node = arena[node_id];

    if (node.inherited >= incumbent - 1e-9) continue;  // pruned by a newer incumbent

    ++res.nodes;

    // materialize bounds: root -> node overrides, child-most last
    chain.clear();
    for (int c = node_id; c > 0; c = arena[c].parent) chain.push_back(c);
    work.lo = lp.lo;
    work.hi = lp.hi;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const Node& nd = arena[*it];
      work.lo[nd.var] = std::max(work.lo[nd.var], nd.lo);
      work.hi[nd.var] = std::min(work.hi[nd.var], nd.hi);
      if (work.lo[nd.var] > work.hi[nd.var]) break;  // empty box, LP will see it too
    }

    bool empty_box = false;
    for (int c : chain)
      if (work.lo[arena[c].var] > work.hi[arena[c].var]) empty_box = true;
    if (empty_box) continue;

    SimplexOptions lpopt = opt.lp;
    lpopt.audit = opt.audit;
    const LpResult rel = solve_lp(work, lpopt);
    if (rel.status == LpStatus::Infeasible) continue;
    if (rel.status == LpStatus::Unbounded) throw std::runtime_error("mip: LP relaxation is unbounded");
    if (rel.status == LpStatus::IterationLimit) throw std::runtime_error("mip: node LP hit its iteration limit");

    if (node_cutoff(rel.objective) >= incumbent - 1e-9) continue;

    // find the branching variable among fractional integer columns
    int branch = -1;
    double branch_frac = 0;
    int branch_prio = std::numeric_limits<int>::min();
    for (int j = 0; j < lp.num_cols() && j < static_cast<int>(integer_mask.size()); ++j) {
      if (!integer_mask[j]) continue;
      const double f = rel.x[j] - std::floor(rel.x[j]);
      if (f <= kIntTol || f >= 1.0 - kIntTol) continue;
      const int prio = j < static_cast<int>(opt.branch_priority.size()) ? opt.branch_priority[j] : 0;
      const double score = -std::abs(f - 0.5);  // most fractional
      if (branch < 0 || prio > branch_prio ||
          (prio == branch_prio && score > -std::abs(branch_frac - 0.5) + 1e-12)) {
        branch = j;
        branch_frac = f;
        branch_prio = prio;
      }
    }

    if (branch < 0) {
      // integral: candidate incumbent
      if (rel.objective < incumbent - 1e-9) {
        incumbent = rel.objective;
        best_x = rel.x;
        for (int j = 0; j < lp.num_cols() && j < static_cast<int>(integer_mask.size()); ++j)
          if (integer_mask[j]) best_x[j] = std::round(best_x[j]);
        if (opt.audit) opt.audit->check_incumbent(work, best_x, integer_mask);
      }
      continue;
    }

    const double floor_v = std::floor(rel.x[branch]);
    Node down{branch, lp.lo[branch], floor_v, node_id, rel.objective};
    Node up{branch, floor_v + 1.0, lp.hi[branch], node_id, rel.objective};
    // explore the side nearer the fractional value first (pushed last)
    const bool down_first = branch_frac <= 0.5;
    arena.push_back(down_first ? up : down);
    open.push_back(static_cast<int>(arena.size()) - 1);
    arena.push_back(down_first ? down : up);
    open.push_back(static_cast<int>(arena.size()) - 1);
  }

  // global dual bound: exhausted tree proves the incumbent, otherwise the
  // weakest open inherited bound still caps what remains
  if (open.empty() && !limits_hit) {
    res.bound = incumbent;  // +inf when infeasible
    if (std::isfinite(incumbent)) {
      res.status = MipStatus::Optimal;
      res.objective = incumbent;
      res.x = best_x;
    } else {
      res.status = MipStatus::Infeasible;
      res.bound = kInf;
      res.x.clear();
    }
    return res;
  }

  double open_min = kInf;
  for (int id : open) open_min = std::min(open_min, arena[id].inherited);
  res.bound = std::min(open_min, incumbent);
  if (std::isfinite(incumbent)) {
    res.status = MipStatus::Feasible;
    res.objective = incumbent;
    res.x = best_x;
  } else {
    res.status = MipStatus::NoSolution;
    res.x.clear();
  }
  return res;
}

}  // namespace scheloc::lps
