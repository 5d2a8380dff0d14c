#pragma once

#include <vector>

#include "scheloc/arcflow.hpp"
#include "scheloc/colgen.hpp"
#include "scheloc/instance.hpp"
#include "scheloc/mip.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

struct MipHeuristicOptions {
  double time_limit_s = 120;
  lps::SimplexOptions lp;
  lps::Audit* audit = nullptr;
};

struct MipHeuristicResult {
  Solution sol;           // best of (searched incumbent, seed); never worse than the seed
  bool improved = false;  // strictly better than the seed
  lps::MipStatus status = lps::MipStatus::NoSolution;
  // Dual bound of the RESTRICTED model: informational only, never a valid
  // bound for the full problem (restricting columns or locations can push
  // the restricted optimum above it).
  double restricted_bound = 0;
  std::int64_t nodes = 0;
};

// Integer search over the pooled columns only, warm-started with the seed
// (the seed's arcs must be inside the pool, as run_colgen guarantees for its
// own seed), followed by local search on the incumbent.
MipHeuristicResult pool_restricted_mip(const Instance& inst, const ArcFlowGraph& g, const ArcSubset& pool,
                                       const Solution& seed, const MipHeuristicOptions& opt = {});

// Integer search restricted to a location subset (all arcs of those
// locations), warm-started with a seed that only uses subset locations,
// followed by local search on the incumbent.
MipHeuristicResult location_restricted_mip(const Instance& inst, const std::vector<int>& locations,
                                           const Solution& seed, const MipHeuristicOptions& opt = {});

// Standalone column-pool heuristic: deterministic construction seeds the
// column generation, whose pool is searched by pool_restricted_mip.
MipHeuristicResult af_cg_heuristic(const Instance& inst, const MipHeuristicOptions& opt = {},
                                   const CgLimits& cg = {});

// Standalone location-subset heuristic: the restricted set holds the first
// min{m, floor(1.5 p)} release-guided locations; the seed is built over the
// first p of them (a prefix, so it stays inside the subset).
MipHeuristicResult af_subset_m_heuristic(const Instance& inst, const MipHeuristicOptions& opt = {});

}  // namespace scheloc
