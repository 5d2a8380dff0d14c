#include "scheloc/mipheur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scheloc/heuristics.hpp"
#include "scheloc/schedule.hpp"

namespace scheloc {

namespace {

// Shared tail: solve the restricted model warm-started at the seed, then
// refine the incumbent with local search; never return worse than the seed.
MipHeuristicResult search_model(const Instance& inst, const AfModel& model, const ArcFlowGraph& g,
                                const Solution& seed, const MipHeuristicOptions& opt) {
  const std::vector<double> warm = encode_solution(model, g, seed);
  lps::MipOptions mo;
  mo.time_limit_s = opt.time_limit_s;
  mo.branch_priority = model.branch_priority;
  mo.objective_integral = true;
  mo.lp = opt.lp;
  mo.audit = opt.audit;
  const lps::MipResult mip = lps::solve_mip(model.lp, model.integer_mask, &warm, mo);

  MipHeuristicResult res;
  res.status = mip.status;
  res.restricted_bound = mip.bound;
  res.nodes = mip.nodes;
  res.sol = seed;
  if (!mip.x.empty()) {
    const Solution refined = local_search(inst, extract_solution(model, g, inst, mip.x));
    if (refined.makespan < res.sol.makespan) res.sol = refined;
  }
  res.improved = res.sol.makespan < seed.makespan;
  return res;
}

}  // namespace

MipHeuristicResult pool_restricted_mip(const Instance& inst, const ArcFlowGraph& g, const ArcSubset& pool,
                                       const Solution& seed, const MipHeuristicOptions& opt) {
  const AfModel model = build_model(g, inst, &pool);
  return search_model(inst, model, g, seed, opt);
}

MipHeuristicResult location_restricted_mip(const Instance& inst, const std::vector<int>& locations,
                                           const Solution& seed, const MipHeuristicOptions& opt) {
  for (int k : seed.chosen_locations())
    if (std::find(locations.begin(), locations.end(), k) == locations.end())
      throw std::invalid_argument("restricted locations do not cover the seed solution");
  const ArcFlowGraph g = build_graph(inst, seed.makespan, locations);
  const AfModel model = build_model(g, inst);
  return search_model(inst, model, g, seed, opt);
}

MipHeuristicResult af_cg_heuristic(const Instance& inst, const MipHeuristicOptions& opt, const CgLimits& cg) {
  const Solution seed = construct_deterministic(inst);
  const ArcFlowGraph g = build_graph(inst, seed.makespan);
  CgLimits limits = cg;
  limits.audit = opt.audit;
  const CgResult columns = run_colgen(g, inst, seed, limits);
  return pool_restricted_mip(inst, g, columns.pool, seed, opt);
}

MipHeuristicResult af_subset_m_heuristic(const Instance& inst, const MipHeuristicOptions& opt) {
  const int want = std::min<int>(inst.m, inst.p + inst.p / 2);  // floor(1.5 p)
  const std::vector<int> subset = deterministic_locations(inst, want);
  std::vector<int> seed_locs = deterministic_locations(inst, inst.p);
  const Solution seed = construct_with_locations(inst, seed_locs);
  return location_restricted_mip(inst, subset, seed, opt);
}

}  // namespace scheloc
