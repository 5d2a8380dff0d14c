#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "scheloc/instance.hpp"
#include "scheloc/lp.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

// One arc of the time-indexed flow network: a job arc processes its job over
// [start, end) = [t, t + p_j); a dummy arc spans idle time between two nodes.
struct Arc {
  Time start = 0;
  Time end = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Reduced arc-flow network per candidate location. Nodes are "normal
// pattern" start times: time points reachable as release dates or as
// completion times of jobs stacked on earlier patterns. Keeping only these
// start times preserves at least one optimal schedule per machine (any
// left-shifted release-ordered schedule starts every job on a pattern) while
// dropping most of the naive time grid.
struct ArcFlowGraph {
  Time horizon = 0;
  std::vector<int> locations;  // instance location ids, strictly increasing

  // job_arcs[ki][j]: arcs of job j at locations[ki], sorted by start
  std::vector<std::vector<std::vector<Arc>>> job_arcs;
  // dummy_arcs[ki]: idle arcs, sorted by start; exactly one per non-sink node
  std::vector<std::vector<Arc>> dummy_arcs;
  // nodes[ki]: pattern times ascending; contains the horizon as sink when
  // the location is usable at all
  std::vector<std::vector<Time>> nodes;

  int loc_index(int location) const;  // -1 when not part of this graph
  std::size_t real_arc_count() const;
  std::size_t total_arc_count() const;
};

// Builds the reduced network for every location (or the given subset) with
// makespan horizon `horizon`. Throws std::runtime_error when some job cannot
// complete by the horizon at any included location, since no feasible
// schedule would exist.
ArcFlowGraph build_graph(const Instance& inst, Time horizon);
ArcFlowGraph build_graph(const Instance& inst, Time horizon, const std::vector<int>& locations);

// Real-arc count of the naive (unreduced) network: one start per unit of
// slack, sum over jobs and included locations of (T - p_j - r_jk + 1)+.
std::size_t unreduced_arc_bound(const Instance& inst, Time horizon);
std::size_t unreduced_arc_bound(const Instance& inst, Time horizon, const std::vector<int>& locations);

// "k j q r" per line (j = -1 for dummy arcs): location, job, arc start, arc
// end. Ordered by location, job, start.
void dump_graph(const ArcFlowGraph& g, std::ostream& out);

// Subset of job arcs, used for restricted models (column generation pools).
struct ArcSubset {
  // sorted arc indices into graph.job_arcs[ki][j]
  std::vector<std::vector<std::vector<int>>> ids;

  static ArcSubset empty_like(const ArcFlowGraph& g);
  static ArcSubset all_of(const ArcFlowGraph& g);
  bool contains(int ki, int job, int arc) const;
  bool add(int ki, int job, int arc);  // keeps ids sorted; false if present
  std::size_t size() const;
};

// Mixed-integer model over the graph:
//   minimize C
//   cover:  each job on >= 1 selected arc
//   flow:   per location and node, conservation with +/- y at source/sink
//   link:   sum of completion times of a job's selected arcs <= C
//   card:   sum y <= p
//   C <= horizon (variable bound), y and job arcs binary, dummies in [0,1].
struct AfModel {
  lps::LinearProgram lp;
  std::vector<char> integer_mask;
  std::vector<int> branch_priority;  // y columns first

  int cmax_col = 0;
  std::vector<int> y_col;  // per ki

  struct ColRef {
    int ki = -1;
    int job = -1;  // -1 for dummy arcs
    int arc = -1;  // index into job_arcs[ki][job] or dummy_arcs[ki]
  };
  int first_arc_col = 0;
  std::vector<ColRef> arc_cols;  // for columns >= first_arc_col

  std::vector<int> cover_row;               // per job
  std::vector<std::vector<int>> flow_row;   // [ki][node_idx]
  std::vector<int> link_row;                // per job
  int card_row = -1;

  // column of job arc `arc` of job j at ki, -1 when outside the model
  int job_arc_col(int ki, int job, int arc) const { return job_col[ki][job][arc]; }
  std::vector<std::vector<int>> dummy_col;              // [ki] aligned with dummy_arcs
  std::vector<std::vector<std::vector<int>>> job_col;   // [ki][j] aligned with job_arcs, -1 outside subset
};

// `subset` restricts the job-arc columns (dummies and y are always present);
// null means the full graph. `with_names` attaches human-readable column and
// row names for LP text export (slower, intended for debugging).
AfModel build_model(const ArcFlowGraph& g, const Instance& inst, const ArcSubset* subset = nullptr,
                    bool with_names = false);

// Turns an (integral) model point into a schedule: selected job arcs become
// start times, jobs covered more than once keep their earliest start (ties:
// lowest location id), each opened location re-sequences by the canonical
// order. Dummy flows are ignored entirely. Empty machines are dropped.
Solution extract_solution(const AfModel& model, const ArcFlowGraph& g, const Instance& inst,
                          const std::vector<double>& x);

// Exact inverse on canonical schedules: encodes a solution as a 0/1 flow
// (job arcs, dummy chains through the release ladder, y, C). Throws
// std::logic_error if some start time has no arc in the model, which cannot
// happen for schedules built with the canonical comparator and
// makespan <= horizon.
std::vector<double> encode_solution(const AfModel& model, const ArcFlowGraph& g, const Solution& sol);

}  // namespace scheloc
