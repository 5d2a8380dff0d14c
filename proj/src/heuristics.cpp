#include "scheloc/heuristics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "scheloc/rng.hpp"
#include "scheloc/schedule.hpp"

namespace scheloc {

namespace {

// Case id per emptiness pattern of the (prefix, middle, suffix) blocks,
// indexed empty(A)*4 + empty(B)*2 + empty(C). The all-empty pattern (a
// single-job machine) folds into the regime's first case.
constexpr int kBeforeCase[8] = {6, 4, 7, 3, 5, 2, 1, 1};
constexpr int kAfterCase[8] = {6, 7, 5, 4, 2, 3, 1, 1};

struct Machine {
  int location = -1;
  std::vector<int> seq;                     // job ids, canonical order for `location`
  std::vector<std::vector<SeqStat>> range;  // [i][j]: stat of seq[i..j)
  Time completion = 0;
};

struct State {
  std::vector<Machine> mach;
  // slot[j][mi]: canonical insertion index of job j in mach[mi].seq
  std::vector<std::vector<int>> slot;
  Time makespan = 0;
};

void refresh_machine(const Instance& inst, Machine& M) {
  std::sort(M.seq.begin(), M.seq.end(),
            [&](int a, int b) { return erd_before(inst, M.location, a, b); });
  const int L = static_cast<int>(M.seq.size());
  M.range.assign(L + 1, std::vector<SeqStat>(L + 1));
  for (int i = 0; i <= L; ++i)
    for (int j = i; j < L; ++j)
      M.range[i][j + 1] = concat(M.range[i][j], job_stat(inst, M.location, M.seq[j]));
  M.completion = M.range[0][L].completion();
}

void refresh_slots(const Instance& inst, State& st, int mi) {
  const Machine& M = st.mach[mi];
  for (int j = 0; j < inst.n; ++j) {
    const auto it = std::lower_bound(M.seq.begin(), M.seq.end(), j, [&](int elem, int val) {
      return erd_before(inst, M.location, elem, val);
    });
    st.slot[j][mi] = static_cast<int>(it - M.seq.begin());
  }
}

Time state_makespan(const State& st) {
  Time mk = 0;
  for (const Machine& M : st.mach) mk = std::max(mk, M.completion);
  return mk;
}

void refresh_all(const Instance& inst, State& st) {
  st.slot.assign(inst.n, std::vector<int>(st.mach.size(), 0));
  for (std::size_t mi = 0; mi < st.mach.size(); ++mi) {
    refresh_machine(inst, st.mach[mi]);
    refresh_slots(inst, st, static_cast<int>(mi));
  }
  st.makespan = state_makespan(st);
}

State state_from(const Instance& inst, const Solution& sol) {
  State st;
  st.mach.resize(sol.machines.size());
  for (std::size_t i = 0; i < sol.machines.size(); ++i) {
    st.mach[i].location = sol.machines[i].location;
    for (const ScheduledJob& sj : sol.machines[i].jobs) st.mach[i].seq.push_back(sj.job);
  }
  refresh_all(inst, st);
  return st;
}

Solution state_to_solution(const Instance& inst, const State& st) {
  Solution s;
  for (const Machine& M : st.mach) {
    if (M.seq.empty()) continue;
    s.machines.push_back(erd_schedule(inst, M.location, M.seq));
    s.makespan = std::max(s.makespan, s.machines.back().completion());
  }
  return s;
}

struct SideEval {
  Time completion = 0;
  int case_id = 0;
};

// New completion of machine `mi` after its job at `out_pos` leaves and
// `in_job` enters at its canonical slot, composed from the range table.
SideEval eval_side(const Instance& inst, const State& st, int mi, int out_pos, int in_job) {
  const Machine& M = st.mach[mi];
  const int L = static_cast<int>(M.seq.size());
  const int b = out_pos;
  const int q = st.slot[in_job][mi];
  const SeqStat in = job_stat(inst, M.location, in_job);
  if (q <= b) {  // entering job lands at or before the leaving job's position
    const SeqStat t = concat(concat(concat(M.range[0][q], in), M.range[q][b]), M.range[b + 1][L]);
    const int idx = (q == 0 ? 4 : 0) + (q == b ? 2 : 0) + (b + 1 == L ? 1 : 0);
    return {t.completion(), kBeforeCase[idx]};
  }
  const SeqStat t = concat(concat(concat(M.range[0][b], M.range[b + 1][q]), in), M.range[q][L]);
  const int idx = (b == 0 ? 4 : 0) + (q == b + 1 ? 2 : 0) + (q == L ? 1 : 0);
  return {t.completion(), 7 + kAfterCase[idx]};
}

template <typename Visit>
void for_each_swap(const Instance& inst, const State& st, SwapCaseCounter* cases, Visit&& visit) {
  const int nm = static_cast<int>(st.mach.size());
  for (int ma = 0; ma < nm; ++ma) {
    if (st.mach[ma].seq.empty()) continue;
    for (int mb = ma + 1; mb < nm; ++mb) {
      if (st.mach[mb].seq.empty()) continue;
      Time other = 0;
      for (int i = 0; i < nm; ++i)
        if (i != ma && i != mb) other = std::max(other, st.mach[i].completion);
      const int la = static_cast<int>(st.mach[ma].seq.size());
      const int lb = static_cast<int>(st.mach[mb].seq.size());
      for (int ia = 0; ia < la; ++ia)
        for (int ib = 0; ib < lb; ++ib) {
          const int ja = st.mach[ma].seq[ia];
          const int jb = st.mach[mb].seq[ib];
          const SideEval ea = eval_side(inst, st, ma, ia, jb);
          const SideEval eb = eval_side(inst, st, mb, ib, ja);
          if (cases) {
            ++(*cases)[ea.case_id - 1];
            ++(*cases)[eb.case_id - 1];
          }
          visit(SwapEval{ma, ia, mb, ib, ea.completion, eb.completion,
                         std::max({other, ea.completion, eb.completion}), ea.case_id, eb.case_id});
        }
    }
  }
}

bool improve_once(const Instance& inst, State& st, LocalSearchStats* stats) {
  const Time cur = st.makespan;
  bool found = false;
  SwapEval best{};
  std::int64_t evals = 0;
  for_each_swap(inst, st, stats ? &stats->cases : nullptr, [&](const SwapEval& ev) {
    ++evals;
    if (ev.makespan < cur && (!found || ev.makespan < best.makespan)) {
      best = ev;
      found = true;
    }
  });
  if (stats) {
    ++stats->rounds;
    stats->evaluations += evals;
  }
  if (!found) return false;
  std::swap(st.mach[best.ma].seq[best.ia], st.mach[best.mb].seq[best.ib]);
  refresh_machine(inst, st.mach[best.ma]);
  refresh_machine(inst, st.mach[best.mb]);
  refresh_slots(inst, st, best.ma);
  refresh_slots(inst, st, best.mb);
  st.makespan = state_makespan(st);
  if (stats) ++stats->moves_applied;
  return true;
}

void descend(const Instance& inst, State& st, LocalSearchStats* stats) {
  while (improve_once(inst, st, stats)) {
  }
}

// Greedy assignment onto fixed locations; keeps empty machines so the
// multistart state always owns exactly the opened locations.
std::vector<Machine> assign_greedy(const Instance& inst, const std::vector<int>& locations) {
  std::vector<Machine> mach(locations.size());
  for (std::size_t i = 0; i < locations.size(); ++i) mach[i].location = locations[i];
  std::vector<Time> load(mach.size(), 0);  // completion in assignment order
  std::vector<char> used(inst.n, 0);
  for (int placed = 0; placed < inst.n; ++placed) {
    int bk = -1, bj = -1;
    Time bfin = 0;
    for (std::size_t k = 0; k < mach.size(); ++k) {
      // this machine's candidate: earliest possible start, ties to the
      // largest processing time (the scan keeps the lowest job id on ties)
      int cand = -1;
      Time cstart = 0;
      for (int j = 0; j < inst.n; ++j) {
        if (used[j]) continue;
        const Time s = std::max(inst.rel(j, mach[k].location), load[k]);
        if (cand < 0 || s < cstart || (s == cstart && inst.proc[j] > inst.proc[cand])) {
          cand = j;
          cstart = s;
        }
      }
      // commit the pair finishing earliest; ties favor the larger job, then
      // the earlier machine slot
      const Time fin = cstart + inst.proc[cand];
      if (bk < 0 || fin < bfin || (fin == bfin && inst.proc[cand] > inst.proc[bj])) {
        bk = static_cast<int>(k);
        bj = cand;
        bfin = fin;
      }
    }
    used[bj] = 1;
    mach[bk].seq.push_back(bj);
    load[bk] = bfin;
  }
  return mach;
}

std::vector<int> random_locations(const Instance& inst, Rng& rng) {
  std::vector<int> all(inst.m);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> picked;
  for (int i = 0; i < inst.p; ++i) {
    const auto idx = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(all.size()) - 1));
    picked.push_back(all[idx]);
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// Relocates every machine, in order, to a random location no machine holds
// at that moment; a vacated location becomes available to later machines.
void perturb(const Instance& inst, State& st, Rng& rng) {
  std::vector<char> open(inst.m, 0);
  for (const Machine& M : st.mach) open[M.location] = 1;
  std::vector<int> closed;
  for (int k = 0; k < inst.m; ++k)
    if (!open[k]) closed.push_back(k);
  for (Machine& M : st.mach) {
    const auto pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(closed.size()) - 1));
    std::swap(M.location, closed[pick]);
    std::sort(closed.begin(), closed.end());
  }
  refresh_all(inst, st);
}

}  // namespace

std::vector<SwapEval> evaluate_all_swaps(const Instance& inst, const Solution& sol, SwapCaseCounter* cases) {
  const State st = state_from(inst, sol);
  std::vector<SwapEval> out;
  for_each_swap(inst, st, cases, [&](const SwapEval& ev) { out.push_back(ev); });
  return out;
}

Solution local_search(const Instance& inst, const Solution& sol, LocalSearchStats* stats) {
  State st = state_from(inst, sol);
  descend(inst, st, stats);
  return state_to_solution(inst, st);
}

std::vector<int> deterministic_locations(const Instance& inst, int count) {
  count = std::min(count, inst.m);
  std::vector<int> chosen;
  std::vector<char> is_chosen(inst.m, 0);
  while (static_cast<int>(chosen.size()) < count) {
    // each job votes for its nearest location among those still unchosen
    std::vector<std::pair<Time, int>> vec;
    for (int j = 0; j < inst.n; ++j) {
      int best = -1;
      for (int k = 0; k < inst.m; ++k) {
        if (is_chosen[k]) continue;
        if (inst.n == inst.m && k == j) continue;
        if (best < 0 || inst.rel(j, k) < inst.rel(j, best)) best = k;
      }
      if (best >= 0) vec.emplace_back(inst.rel(j, best), best);
    }
    if (vec.empty()) {  // no votes possible; fall back to the lowest free ids
      for (int k = 0; k < inst.m && static_cast<int>(chosen.size()) < count; ++k)
        if (!is_chosen[k]) {
          is_chosen[k] = 1;
          chosen.push_back(k);
        }
      break;
    }
    std::stable_sort(vec.begin(), vec.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [r, k] : vec) {
      if (static_cast<int>(chosen.size()) >= count) break;
      if (is_chosen[k]) continue;
      is_chosen[k] = 1;
      chosen.push_back(k);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Solution construct_with_locations(const Instance& inst, const std::vector<int>& locations) {
  if (locations.empty() || static_cast<int>(locations.size()) > inst.p)
    throw std::invalid_argument("construct: need between 1 and p locations");
  std::vector<int> sorted = locations;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("construct: duplicate location");
  if (sorted.front() < 0 || sorted.back() >= inst.m)
    throw std::invalid_argument("construct: location out of range");
  State st;
  st.mach = assign_greedy(inst, sorted);
  refresh_all(inst, st);
  return state_to_solution(inst, st);
}

Solution construct_deterministic(const Instance& inst) {
  return construct_with_locations(inst, deterministic_locations(inst, inst.p));
}

IlsResult run_ils(const Instance& inst, const IlsOptions& opt) {
  if (opt.n_iter < 1 || opt.n_ils < 0)
    throw std::invalid_argument("ils: n_iter must be >= 1 and n_ils >= 0");
  const Rng base(opt.seed);
  IlsResult res;
  Time best_mk = std::numeric_limits<Time>::max();
  for (int it = 0; it < opt.n_iter; ++it) {
    Rng stream = base.split(static_cast<std::uint64_t>(it));
    const std::vector<int> locs = it == opt.n_iter - 1 ? deterministic_locations(inst, inst.p)
                                                       : random_locations(inst, stream);
    State s;
    s.mach = assign_greedy(inst, locs);
    refresh_all(inst, s);

    State inc = s;
    int patience = 1;
    while (patience <= opt.n_ils) {
      descend(inst, s, opt.stats);
      if (s.makespan < inc.makespan) {
        inc = s;
        patience = 0;
      }
      s = inc;
      perturb(inst, s, stream);
      ++patience;
    }

    res.start_makespan.push_back(inc.makespan);
    if (inc.makespan < best_mk) {
      best_mk = inc.makespan;
      res.best = state_to_solution(inst, inc);
      res.best_start = it;
    }
  }
  return res;
}

}  // namespace scheloc
