#include "scheloc/framework.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "scheloc/arcflow.hpp"
#include "scheloc/colgen.hpp"
#include "scheloc/mip.hpp"
#include "scheloc/mipheur.hpp"
#include "scheloc/rng.hpp"
#include "scheloc/schedule.hpp"

namespace scheloc {

namespace {

class StageRecorder {
 public:
  StageRecorder(FrameworkResult& res, std::ostream* trace) : res_(res), trace_(trace) {}

  // Every stage lands in the report, including skipped ones.
  void add(const std::string& stage, bool ran, double seconds, Time lb, Time ub, std::string note) {
    res_.stages.push_back({stage, ran, seconds, lb, ub, note});
    if (trace_) {
      *trace_ << "stage " << stage << (ran ? "" : " [skipped]") << ": lb=" << lb << " ub=";
      if (ub == std::numeric_limits<Time>::max())
        *trace_ << "-";
      else
        *trace_ << ub;
      if (!note.empty()) *trace_ << " (" << note << ")";
      *trace_ << '\n';
    }
  }

 private:
  FrameworkResult& res_;
  std::ostream* trace_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

FrameworkResult run_framework(const Instance& inst, const FrameworkOptions& opt) {
  using clock = std::chrono::steady_clock;
  inst.validate();

  FrameworkResult res;
  StageRecorder report(res, opt.trace);
  Time lb = 0;
  Time ub = std::numeric_limits<Time>::max();
  const auto close_check = [&](const std::string& stage) {
    if (lb > ub) throw std::logic_error("bound crossing after stage " + stage);
    if (lb == ub && res.closed_by.empty()) res.closed_by = stage;
    return lb == ub;
  };

  // floor from the work volume plus the earliest possible start
  auto t0 = clock::now();
  lb = initial_lower_bound(inst);
  report.add("lb", true, seconds_since(t0), lb, ub, "");

  // multistart search gives the first feasible solution
  t0 = clock::now();
  IlsOptions io;
  io.n_iter = opt.ils_n_iter;
  io.n_ils = opt.ils_n_ils;
  io.seed = opt.seed;
  const IlsResult ils = run_ils(inst, io);
  res.best = ils.best;
  ub = res.best.makespan;
  report.add("ils", true, seconds_since(t0), lb, ub,
             "best start " + std::to_string(ils.best_start));
  bool closed = close_check("ils");

  // column generation: proven relaxation value lifts the lower bound
  ArcFlowGraph graph;
  CgResult cg;
  bool have_pool = false;
  if (!closed) {
    t0 = clock::now();
    try {
      graph = build_graph(inst, ub);
      CgLimits cl;
      cl.time_limit_s = opt.cg_time_limit_s;
      cl.audit = opt.audit;
      cg = run_colgen(graph, inst, res.best, cl);
      have_pool = cg.final_status == lps::LpStatus::Optimal;
      if (cg.proven) lb = std::max(lb, safe_ceil(cg.value));
      report.add("cg", true, seconds_since(t0), lb, ub,
                 (cg.proven ? "proven, " : "unproven, ") + std::string("pool=") +
                     std::to_string(cg.pool.size()) + "/" + std::to_string(graph.real_arc_count()));
      closed = close_check("cg");
    } catch (const std::exception& e) {
      report.add("cg", true, seconds_since(t0), lb, ub, std::string("failed: ") + e.what());
    }
  } else {
    report.add("cg", false, 0, lb, ub, "");
  }

  // integer search over the generated columns; upper bound only
  if (!closed && have_pool) {
    t0 = clock::now();
    try {
      MipHeuristicOptions ho;
      ho.time_limit_s = opt.heuristic_time_limit_s;
      ho.audit = opt.audit;
      const MipHeuristicResult h = pool_restricted_mip(inst, graph, cg.pool, res.best, ho);
      if (h.sol.makespan < ub) {
        res.best = h.sol;
        ub = res.best.makespan;
      }
      report.add("af_cg", true, seconds_since(t0), lb, ub, "nodes=" + std::to_string(h.nodes));
      closed = close_check("af_cg");
    } catch (const std::exception& e) {
      report.add("af_cg", true, seconds_since(t0), lb, ub, std::string("failed: ") + e.what());
    }
  } else {
    report.add("af_cg", false, 0, lb, ub, closed ? "" : "no columns available");
  }

  // integer search over the incumbent's locations plus a few random extras
  if (!closed) {
    t0 = clock::now();
    try {
      std::vector<int> subset = res.best.chosen_locations();
      std::sort(subset.begin(), subset.end());
      std::vector<int> others;
      for (int k = 0; k < inst.m; ++k)
        if (!std::binary_search(subset.begin(), subset.end(), k)) others.push_back(k);
      Rng draw = Rng(opt.seed).split(0x5b5e7u);
      const int extras = std::min<int>(inst.p / 2, static_cast<int>(others.size()));
      for (int i = 0; i < extras; ++i) {
        const auto pick =
            static_cast<std::size_t>(draw.uniform_int(0, static_cast<std::int64_t>(others.size()) - 1));
        subset.push_back(others[pick]);
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      std::sort(subset.begin(), subset.end());
      MipHeuristicOptions ho;
      ho.time_limit_s = opt.heuristic_time_limit_s;
      ho.audit = opt.audit;
      const MipHeuristicResult h = location_restricted_mip(inst, subset, res.best, ho);
      if (h.sol.makespan < ub) {
        res.best = h.sol;
        ub = res.best.makespan;
      }
      report.add("af_subset_m", true, seconds_since(t0), lb, ub,
                 "locations=" + std::to_string(subset.size()) + " nodes=" + std::to_string(h.nodes));
      closed = close_check("af_subset_m");
    } catch (const std::exception& e) {
      report.add("af_subset_m", true, seconds_since(t0), lb, ub, std::string("failed: ") + e.what());
    }
  } else {
    report.add("af_subset_m", false, 0, lb, ub, "");
  }

  // full model, warm-started: the one stage whose dual bound counts globally
  if (!closed) {
    t0 = clock::now();
    try {
      const ArcFlowGraph full_graph = build_graph(inst, ub);
      const AfModel model = build_model(full_graph, inst);
      const std::vector<double> warm = encode_solution(model, full_graph, res.best);
      lps::MipOptions mo;
      mo.time_limit_s = opt.stage_time_limit_s;
      mo.branch_priority = model.branch_priority;
      mo.objective_integral = true;
      mo.audit = opt.audit;
      const lps::MipResult mip = lps::solve_mip(model.lp, model.integer_mask, &warm, mo);
      if (!mip.x.empty()) {
        Solution found = extract_solution(model, full_graph, inst, mip.x);
        if (mip.status != lps::MipStatus::Optimal) found = local_search(inst, found);
        if (found.makespan < ub) {
          res.best = found;
          ub = res.best.makespan;
        }
      }
      if (mip.status == lps::MipStatus::Optimal) {
        // the model spans every makespan up to a feasible one, so its
        // optimum is the problem optimum
        lb = std::max(lb, ub);
      } else if (std::isfinite(mip.bound)) {
        lb = std::max(lb, safe_ceil(mip.bound));
      }
      report.add("af_full", true, seconds_since(t0), lb, ub, "nodes=" + std::to_string(mip.nodes));
      closed = close_check("af_full");
    } catch (const std::exception& e) {
      report.add("af_full", true, seconds_since(t0), lb, ub, std::string("failed: ") + e.what());
    }
  } else {
    report.add("af_full", false, 0, lb, ub, "");
  }

  res.bounds.lb = lb;
  res.bounds.ub = ub;
  res.bounds.optimal = lb == ub;
  return res;
}

}  // namespace scheloc
