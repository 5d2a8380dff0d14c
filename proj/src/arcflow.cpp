#include "scheloc/arcflow.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "scheloc/schedule.hpp"

namespace scheloc {

int ArcFlowGraph::loc_index(int location) const {
  const auto it = std::lower_bound(locations.begin(), locations.end(), location);
  if (it == locations.end() || *it != location) return -1;
  return static_cast<int>(it - locations.begin());
}

std::size_t ArcFlowGraph::real_arc_count() const {
  std::size_t c = 0;
  for (const auto& per_loc : job_arcs)
    for (const auto& arcs : per_loc) c += arcs.size();
  return c;
}

std::size_t ArcFlowGraph::total_arc_count() const {
  std::size_t c = real_arc_count();
  for (const auto& arcs : dummy_arcs) c += arcs.size();
  return c;
}

ArcFlowGraph build_graph(const Instance& inst, Time horizon) {
  std::vector<int> all(inst.m);
  for (int k = 0; k < inst.m; ++k) all[k] = k;
  return build_graph(inst, horizon, all);
}

ArcFlowGraph build_graph(const Instance& inst, Time horizon, const std::vector<int>& locations) {
  if (horizon < 1) throw std::runtime_error("arc flow: horizon must be >= 1");
  ArcFlowGraph g;
  g.horizon = horizon;
  g.locations = locations;
  std::sort(g.locations.begin(), g.locations.end());

  const int nk = static_cast<int>(g.locations.size());
  g.job_arcs.assign(nk, std::vector<std::vector<Arc>>(inst.n));
  g.dummy_arcs.resize(nk);
  g.nodes.resize(nk);

  std::vector<int> order(inst.n);
  std::vector<char> pattern(static_cast<std::size_t>(horizon) + 1);

  for (int ki = 0; ki < nk; ++ki) {
    const int k = g.locations[ki];
    std::fill(pattern.begin(), pattern.end(), 0);

    for (int j = 0; j < inst.n; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return erd_before(inst, k, a, b); });

    // A start time is a pattern iff some release-ordered left-shifted
    // schedule can start a job there. Seeding each release and extending
    // patterns by p_j in release order generates exactly these times; one
    // descending sweep per job suffices because stacking two copies of the
    // same job is never normal.
    for (int j : order) {
      const Time r = inst.rel(j, k);
      if (r <= horizon) pattern[r] = 1;
      for (Time t = horizon - inst.proc[j]; t >= r; --t)
        if (pattern[t]) {
          pattern[t + inst.proc[j]] = 1;
          g.job_arcs[ki][j].push_back({t, t + inst.proc[j]});
        }
    }
    for (auto& arcs : g.job_arcs[ki]) std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });

    // release ladder: distinct release values within the horizon, then the
    // horizon itself as sink
    std::vector<Time> ladder;
    for (int j = 0; j < inst.n; ++j)
      if (inst.rel(j, k) <= horizon) ladder.push_back(inst.rel(j, k));
    ladder.push_back(horizon);
    std::sort(ladder.begin(), ladder.end());
    ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());

    // each non-sink pattern gets one dummy arc to the next strictly larger
    // ladder value, which is itself a pattern, so idle chains always exist
    std::size_t li = 0;
    bool any = false;
    for (Time t = 0; t < horizon; ++t) {
      while (li < ladder.size() && ladder[li] <= t) ++li;
      if (!pattern[t]) continue;
      any = true;
      g.nodes[ki].push_back(t);
      g.dummy_arcs[ki].push_back({t, ladder[li]});
    }
    if (any || pattern[horizon]) g.nodes[ki].push_back(horizon);
  }

  for (int j = 0; j < inst.n; ++j) {
    bool placeable = false;
    for (int ki = 0; ki < nk && !placeable; ++ki) placeable = !g.job_arcs[ki][j].empty();
    if (!placeable)
      throw std::runtime_error("arc flow: job " + std::to_string(j) + " cannot complete by horizon " +
                               std::to_string(horizon) + " at any included location");
  }
  return g;
}

std::size_t unreduced_arc_bound(const Instance& inst, Time horizon) {
  std::vector<int> all(inst.m);
  for (int k = 0; k < inst.m; ++k) all[k] = k;
  return unreduced_arc_bound(inst, horizon, all);
}

std::size_t unreduced_arc_bound(const Instance& inst, Time horizon, const std::vector<int>& locations) {
  std::size_t total = 0;
  for (int k : locations)
    for (int j = 0; j < inst.n; ++j) total += static_cast<std::size_t>(std::max<Time>(0, horizon - inst.proc[j] - inst.rel(j, k) + 1));
  return total;
}

void dump_graph(const ArcFlowGraph& g, std::ostream& out) {
  for (std::size_t ki = 0; ki < g.locations.size(); ++ki) {
    const int k = g.locations[ki];
    for (std::size_t j = 0; j < g.job_arcs[ki].size(); ++j)
      for (const Arc& a : g.job_arcs[ki][j]) out << k << ' ' << j << ' ' << a.start << ' ' << a.end << '\n';
    for (const Arc& a : g.dummy_arcs[ki]) out << k << " -1 " << a.start << ' ' << a.end << '\n';
  }
}

ArcSubset ArcSubset::empty_like(const ArcFlowGraph& g) {
  ArcSubset s;
  s.ids.resize(g.job_arcs.size());
  for (std::size_t ki = 0; ki < g.job_arcs.size(); ++ki) s.ids[ki].resize(g.job_arcs[ki].size());
  return s;
}

ArcSubset ArcSubset::all_of(const ArcFlowGraph& g) {
  ArcSubset s = empty_like(g);
  for (std::size_t ki = 0; ki < g.job_arcs.size(); ++ki)
    for (std::size_t j = 0; j < g.job_arcs[ki].size(); ++j) {
      s.ids[ki][j].resize(g.job_arcs[ki][j].size());
      for (std::size_t a = 0; a < s.ids[ki][j].size(); ++a) s.ids[ki][j][a] = static_cast<int>(a);
    }
  return s;
}

bool ArcSubset::contains(int ki, int job, int arc) const {
  const auto& v = ids[ki][job];
  return std::binary_search(v.begin(), v.end(), arc);
}

bool ArcSubset::add(int ki, int job, int arc) {
  auto& v = ids[ki][job];
  const auto it = std::lower_bound(v.begin(), v.end(), arc);
  if (it != v.end() && *it == arc) return false;
  v.insert(it, arc);
  return true;
}

std::size_t ArcSubset::size() const {
  std::size_t c = 0;
  for (const auto& per_loc : ids)
    for (const auto& v : per_loc) c += v.size();
  return c;
}

AfModel build_model(const ArcFlowGraph& g, const Instance& inst, const ArcSubset* subset, bool with_names) {
  AfModel md;
  const int nk = static_cast<int>(g.locations.size());

  // rows: cover per job, flow per (location, node), completion link per job,
  // cardinality
  md.cover_row.resize(inst.n);
  for (int j = 0; j < inst.n; ++j)
    md.cover_row[j] = md.lp.add_row(lps::RowSense::GE, 1, with_names ? "cover_" + std::to_string(j) : "");

  md.flow_row.assign(nk, {});
  for (int ki = 0; ki < nk; ++ki) {
    const auto& nodes = g.nodes[ki];
    md.flow_row[ki].assign(nodes.size(), -1);
    if (nodes.size() < 2) continue;  // nothing can flow here
    for (std::size_t t = 0; t < nodes.size(); ++t)
      md.flow_row[ki][t] = md.lp.add_row(
          lps::RowSense::EQ, 0,
          with_names ? "flow_" + std::to_string(g.locations[ki]) + "_" + std::to_string(nodes[t]) : "");
  }

  md.link_row.resize(inst.n);
  for (int j = 0; j < inst.n; ++j)
    md.link_row[j] = md.lp.add_row(lps::RowSense::LE, 0, with_names ? "link_" + std::to_string(j) : "");

  md.card_row = md.lp.add_row(lps::RowSense::LE, inst.p, with_names ? "card" : "");

  // columns: C first (with its -1 in every link row), then y, then arcs
  std::vector<std::pair<int, double>> entries;
  for (int j = 0; j < inst.n; ++j) entries.push_back({md.link_row[j], -1.0});
  md.cmax_col = md.lp.add_col(0, static_cast<double>(g.horizon), 1, entries, with_names ? "C" : "");

  md.integer_mask.assign(md.lp.num_cols(), 0);
  md.branch_priority.assign(md.lp.num_cols(), 0);
  md.y_col.resize(nk);

  auto node_index = [&](int ki, Time t) {
    const auto& nodes = g.nodes[ki];
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
    if (it == nodes.end() || *it != t)
      throw std::logic_error("arc flow: endpoint " + std::to_string(t) + " is not a node");
    return static_cast<int>(it - nodes.begin());
  };

  for (int ki = 0; ki < nk; ++ki) {
    entries.clear();
    if (g.nodes[ki].size() >= 2) {
      const int src = md.flow_row[ki].front();
      const int snk = md.flow_row[ki].back();
      entries.push_back({src, -1.0});  // out - in = +y at the source
      entries.push_back({snk, 1.0});   // out - in = -y at the sink
    }
    entries.push_back({md.card_row, 1.0});
    std::sort(entries.begin(), entries.end());
    md.y_col[ki] = md.lp.add_col(0, 1, 0, entries, with_names ? "y_" + std::to_string(g.locations[ki]) : "");
    md.integer_mask.push_back(1);
    md.branch_priority.push_back(1);
  }

  md.first_arc_col = md.lp.num_cols();
  md.job_col.assign(nk, {});
  md.dummy_col.assign(nk, {});

  for (int ki = 0; ki < nk; ++ki) {
    md.job_col[ki].assign(inst.n, {});
    for (int j = 0; j < inst.n; ++j) {
      const auto& arcs = g.job_arcs[ki][j];
      md.job_col[ki][j].assign(arcs.size(), -1);
      for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (subset && !subset->contains(ki, j, static_cast<int>(a))) continue;
        const Arc& arc = arcs[a];
        entries.clear();
        entries.push_back({md.cover_row[j], 1.0});
        const int row_q = md.flow_row[ki][node_index(ki, arc.start)];
        const int row_r = md.flow_row[ki][node_index(ki, arc.end)];
        entries.push_back({row_q, 1.0});
        entries.push_back({row_r, -1.0});
        entries.push_back({md.link_row[j], static_cast<double>(arc.end)});
        std::sort(entries.begin(), entries.end());
        const std::string name = with_names ? "x_" + std::to_string(arc.start) + "_" + std::to_string(arc.end) + "_" +
                                                  std::to_string(j) + "_" + std::to_string(g.locations[ki])
                                            : "";
        const int col = md.lp.add_col(0, 1, 0, entries, name);
        md.job_col[ki][j][a] = col;
        md.arc_cols.push_back({ki, j, static_cast<int>(a)});
        md.integer_mask.push_back(1);
        md.branch_priority.push_back(0);
      }
    }

    const auto& dummies = g.dummy_arcs[ki];
    md.dummy_col[ki].assign(dummies.size(), -1);
    for (std::size_t a = 0; a < dummies.size(); ++a) {
      const Arc& arc = dummies[a];
      entries.clear();
      entries.push_back({md.flow_row[ki][node_index(ki, arc.start)], 1.0});
      entries.push_back({md.flow_row[ki][node_index(ki, arc.end)], -1.0});
      std::sort(entries.begin(), entries.end());
      const std::string name = with_names ? "d_" + std::to_string(arc.start) + "_" + std::to_string(arc.end) + "_" +
                                                std::to_string(g.locations[ki])
                                          : "";
      const int col = md.lp.add_col(0, 1, 0, entries, name);
      md.dummy_col[ki][a] = col;
      md.arc_cols.push_back({ki, -1, static_cast<int>(a)});
      md.integer_mask.push_back(0);
      md.branch_priority.push_back(0);
    }
  }

  return md;
}

Solution extract_solution(const AfModel& model, const ArcFlowGraph& g, const Instance& inst,
                          const std::vector<double>& x) {
  struct Pick {
    Time start;
    int ki;
    int job;
  };
  std::vector<Pick> picks;
  for (std::size_t c = 0; c < model.arc_cols.size(); ++c) {
    const auto& ref = model.arc_cols[c];
    if (ref.job < 0) continue;  // dummy flows carry no assignment information
    if (x[model.first_arc_col + c] < 0.5) continue;
    picks.push_back({g.job_arcs[ref.ki][ref.job][ref.arc].start, ref.ki, ref.job});
  }
  // earliest start wins for jobs covered more than once; ties by location id
  std::sort(picks.begin(), picks.end(), [&](const Pick& a, const Pick& b) {
    if (a.start != b.start) return a.start < b.start;
    return g.locations[a.ki] < g.locations[b.ki];
  });
  std::vector<char> taken(inst.n, 0);
  std::vector<std::vector<int>> per_loc(g.locations.size());
  for (const Pick& pk : picks) {
    if (taken[pk.job]) continue;
    taken[pk.job] = 1;
    per_loc[pk.ki].push_back(pk.job);
  }

  Solution sol;
  for (std::size_t ki = 0; ki < per_loc.size(); ++ki) {
    if (per_loc[ki].empty()) continue;
    sol.machines.push_back(erd_schedule(inst, g.locations[ki], per_loc[ki]));
    sol.makespan = std::max(sol.makespan, sol.machines.back().completion());
  }
  return sol;
}

std::vector<double> encode_solution(const AfModel& model, const ArcFlowGraph& g, const Solution& sol) {
  std::vector<double> x(model.lp.num_cols(), 0.0);
  x[model.cmax_col] = static_cast<double>(sol.makespan);

  for (const auto& ms : sol.machines) {
    const int ki = g.loc_index(ms.location);
    if (ki < 0) throw std::logic_error("encode: location " + std::to_string(ms.location) + " not in graph");
    x[model.y_col[ki]] = 1.0;
    if (g.nodes[ki].empty()) throw std::logic_error("encode: location has no nodes");

    const auto& dummies = g.dummy_arcs[ki];
    auto hop = [&](Time t) {  // traverse the dummy leaving node t
      const auto it = std::lower_bound(dummies.begin(), dummies.end(), t,
                                       [](const Arc& a, Time v) { return a.start < v; });
      if (it == dummies.end() || it->start != t)
        throw std::logic_error("encode: no idle arc at t=" + std::to_string(t));
      x[model.dummy_col[ki][it - dummies.begin()]] = 1.0;
      return it->end;
    };

    Time t = g.nodes[ki].front();
    for (const auto& sj : ms.jobs) {
      while (t < sj.start) {
        const Time next = hop(t);
        if (next > sj.start)
          throw std::logic_error("encode: idle chain overshoots start " + std::to_string(sj.start));
        t = next;
      }
      const auto& arcs = g.job_arcs[ki][sj.job];
      const auto it = std::lower_bound(arcs.begin(), arcs.end(), sj.start,
                                       [](const Arc& a, Time v) { return a.start < v; });
      if (it == arcs.end() || it->start != sj.start)
        throw std::logic_error("encode: job " + std::to_string(sj.job) + " has no arc starting at " +
                               std::to_string(sj.start));
      const int col = model.job_arc_col(ki, sj.job, static_cast<int>(it - arcs.begin()));
      if (col < 0) throw std::logic_error("encode: arc outside the restricted model");
      x[col] = 1.0;
      t = sj.completion;
    }
    while (t < g.horizon) t = hop(t);
  }
  return x;
}

}  // namespace scheloc
