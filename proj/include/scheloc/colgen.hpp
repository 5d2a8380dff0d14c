#pragma once

#include <iosfwd>
#include <vector>

#include "scheloc/arcflow.hpp"
#include "scheloc/instance.hpp"
#include "scheloc/lp.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

// Master duals, indexed like the graph: pi per cover row, tau per
// (location, node) flow row (0 where a location has no flow rows), gamma per
// completion-link row. Minimization master: pi >= 0, gamma <= 0, tau free.
struct DualValues {
  std::vector<double> pi;
  std::vector<std::vector<double>> tau;
  std::vector<double> gamma;
};

DualValues extract_duals(const AfModel& model, const lps::LpResult& lp);

// Reduced cost of the job arc (q -> r): zero objective minus the dual prices
// of its four rows, i.e. -pi_j - tau_kq + tau_kr - r * gamma_j.
double reduced_cost(const ArcFlowGraph& g, const DualValues& duals, int ki, int job, const Arc& arc);

struct CgCandidate {
  int ki = 0, job = 0, arc = 0;
  double rc = 0;
};

// Keeps the `per_pair_keep` most negative candidates per (location, job)
// pair; the globally most negative candidate is in its own pair's slice, so
// it always survives. Deterministic: ties broken by (ki, job, arc).
std::vector<CgCandidate> select_columns(std::vector<CgCandidate> negative, int per_pair_keep);

struct CgIteration {
  int iter = 0;
  double master_value = 0;
  double min_rc = 0;
  int added = 0;
  std::size_t pool_size = 0;
};

struct CgLimits {
  int max_iterations = 1000;
  double time_limit_s = 60;
  int per_pair_keep = 10;
  lps::SimplexOptions lp;
  lps::Audit* audit = nullptr;
  std::ostream* trace = nullptr;
};

struct CgResult {
  double value = 0;     // master LP optimum at exit
  bool proven = false;  // no arc priced negative: value equals the full-model LP bound
  ArcSubset pool;
  DualValues duals;
  std::vector<CgIteration> trace;
  lps::LpStatus final_status = lps::LpStatus::IterationLimit;
};

// Column generation for the LP relaxation. The restricted master holds C,
// every y and dummy column, and the job-arc pool, initialized from the seed
// schedule's arcs (so the master is feasible from the first iteration);
// pricing scans every absent job arc. The pool only grows, so with the
// pricing tolerance of 1e-7 the loop is finite. On `proven` exit the master
// value is the exact LP-relaxation bound of the full model.
CgResult run_colgen(const ArcFlowGraph& g, const Instance& inst, const Solution& seed, const CgLimits& lim = {});

// The seed's arcs as a pool (also the warm-start pool of the restricted
// mixed-integer heuristic). Throws like encode_solution when not encodable.
ArcSubset seed_pool(const ArcFlowGraph& g, const Solution& seed);

}  // namespace scheloc
