#include "scheloc/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace scheloc {

namespace {

int node_index(const std::vector<Time>& nodes, Time t) {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), t);
  if (it == nodes.end() || *it != t) throw std::logic_error("arc endpoint is not a node");
  return static_cast<int>(it - nodes.begin());
}

}  // namespace

DualValues extract_duals(const AfModel& model, const lps::LpResult& lp) {
  DualValues d;
  d.pi.resize(model.cover_row.size());
  for (std::size_t j = 0; j < model.cover_row.size(); ++j) d.pi[j] = lp.duals[model.cover_row[j]];
  d.gamma.resize(model.link_row.size());
  for (std::size_t j = 0; j < model.link_row.size(); ++j) d.gamma[j] = lp.duals[model.link_row[j]];
  d.tau.resize(model.flow_row.size());
  for (std::size_t ki = 0; ki < model.flow_row.size(); ++ki) {
    d.tau[ki].resize(model.flow_row[ki].size(), 0.0);
    for (std::size_t t = 0; t < model.flow_row[ki].size(); ++t)
      if (model.flow_row[ki][t] >= 0) d.tau[ki][t] = lp.duals[model.flow_row[ki][t]];
  }
  return d;
}

double reduced_cost(const ArcFlowGraph& g, const DualValues& duals, int ki, int job, const Arc& arc) {
  // Column rows: +1 cover (pi), +1 flow at start, -1 flow at end (tau),
  // +end in the completion link (gamma); objective coefficient 0.
  const auto& nodes = g.nodes[ki];
  const double tau_s = duals.tau[ki][node_index(nodes, arc.start)];
  const double tau_e = duals.tau[ki][node_index(nodes, arc.end)];
  return -duals.pi[job] - tau_s + tau_e - static_cast<double>(arc.end) * duals.gamma[job];
}

std::vector<CgCandidate> select_columns(std::vector<CgCandidate> negative, int per_pair_keep) {
  std::sort(negative.begin(), negative.end(), [](const CgCandidate& a, const CgCandidate& b) {
    if (a.rc != b.rc) return a.rc < b.rc;
    if (a.ki != b.ki) return a.ki < b.ki;
    if (a.job != b.job) return a.job < b.job;
    return a.arc < b.arc;
  });
  std::vector<CgCandidate> kept;
  std::map<std::pair<int, int>, int> taken;
  for (const CgCandidate& c : negative) {
    int& cnt = taken[{c.ki, c.job}];
    if (cnt >= per_pair_keep) continue;
    ++cnt;
    kept.push_back(c);
  }
  return kept;
}

ArcSubset seed_pool(const ArcFlowGraph& g, const Solution& seed) {
  ArcSubset pool = ArcSubset::empty_like(g);
  for (const MachineSchedule& ms : seed.machines) {
    const int ki = g.loc_index(ms.location);
    if (ki < 0) throw std::logic_error("seed uses a location outside the graph");
    for (const ScheduledJob& sj : ms.jobs) {
      const auto& arcs = g.job_arcs[ki][sj.job];
      const auto it = std::lower_bound(arcs.begin(), arcs.end(), sj.start,
                                       [](const Arc& a, Time t) { return a.start < t; });
      if (it == arcs.end() || it->start != sj.start)
        throw std::logic_error("seed start time has no arc in the graph");
      pool.add(ki, sj.job, static_cast<int>(it - arcs.begin()));
    }
  }
  return pool;
}

CgResult run_colgen(const ArcFlowGraph& g, const Instance& inst, const Solution& seed, const CgLimits& lim) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };
  constexpr double kPricingTol = 1e-7;

  CgResult res;
  res.pool = seed_pool(g, seed);

  const int nk = static_cast<int>(g.locations.size());
  for (int iter = 0; lim.max_iterations <= 0 || iter < lim.max_iterations; ++iter) {
    const AfModel md = build_model(g, inst, &res.pool);
    lps::SimplexOptions opt = lim.lp;
    opt.audit = lim.audit;
    const lps::LpResult lp = lps::solve_lp(md.lp, opt);
    res.final_status = lp.status;
    if (lp.status != lps::LpStatus::Optimal) break;
    res.value = lp.objective;
    res.duals = extract_duals(md, lp);

    double min_rc = 0;
    std::vector<CgCandidate> negative;
    for (int ki = 0; ki < nk; ++ki)
      for (int j = 0; j < inst.n; ++j) {
        const auto& arcs = g.job_arcs[ki][j];
        for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
          if (res.pool.contains(ki, j, a)) continue;
          const double rc = reduced_cost(g, res.duals, ki, j, arcs[a]);
          min_rc = std::min(min_rc, rc);
          if (rc < -kPricingTol) negative.push_back({ki, j, a, rc});
        }
      }

    int added = 0;
    if (!negative.empty()) {
      for (const CgCandidate& c : select_columns(std::move(negative), lim.per_pair_keep))
        added += res.pool.add(c.ki, c.job, c.arc) ? 1 : 0;
    }
    res.trace.push_back({iter, lp.objective, min_rc, added, res.pool.size()});
    if (lim.trace)
      *lim.trace << "cg iter " << iter << ": value=" << lp.objective << " min_rc=" << min_rc
                 << " added=" << added << " pool=" << res.pool.size() << '\n';

    if (added == 0) {  // no arc prices below tolerance: master bound is the full LP bound
      res.proven = true;
      break;
    }
    if (lim.time_limit_s > 0 && elapsed() > lim.time_limit_s) break;
  }
  return res;
}

}  // namespace scheloc
