#include "scheloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "scheloc/schedule.hpp"

namespace scheloc {

namespace {

double binomial(int m, int p) {
  double v = 1.0;
  for (int i = 1; i <= p; ++i) v = v * (m - p + i) / i;
  return v;
}

// Completion time of one machine from a pre-ranked job list: jobs arrive
// already sorted by the canonical order for `location`.
Time machine_completion(const Instance& inst, int location, const std::vector<int>& jobs) {
  Time clock = 0;
  for (int j : jobs) clock = std::max(clock, inst.rel(j, location)) + inst.proc[j];
  return clock;
}

}  // namespace

OracleResult solve_exact(const Instance& inst, const OracleOptions& opt) {
  inst.validate();
  const int n = inst.n, m = inst.m, p = inst.p;

  const double work = binomial(m, p) * std::pow(static_cast<double>(p), n);
  if (work > opt.max_work)
    throw std::runtime_error("oracle: enumeration size " + std::to_string(work) + " exceeds cap " + std::to_string(opt.max_work));

  // rank[k][j]: position of job j in the canonical order at location k, so
  // per-assignment machine sequences are sorted by a plain integer key.
  std::vector<std::vector<int>> rank(m, std::vector<int>(n));
  {
    std::vector<int> order(n);
    for (int k = 0; k < m; ++k) {
      for (int j = 0; j < n; ++j) order[j] = j;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return erd_before(inst, k, a, b); });
      for (int pos = 0; pos < n; ++pos) rank[k][order[pos]] = pos;
    }
  }

  Time best = std::numeric_limits<Time>::max();
  std::vector<int> best_locs;
  std::vector<int> best_assign;

  std::vector<int> locs(p);
  for (int i = 0; i < p; ++i) locs[i] = i;

  std::vector<int> assign(n, 0);
  std::vector<std::vector<int>> buckets(p);

  for (;;) {
    // all p^n assignments for the current location subset
    std::fill(assign.begin(), assign.end(), 0);
    for (;;) {
      for (auto& b : buckets) b.clear();
      for (int j = 0; j < n; ++j) buckets[assign[j]].push_back(j);

      Time cmax = 0;
      for (int i = 0; i < p && cmax < best; ++i) {
        const int k = locs[i];
        std::sort(buckets[i].begin(), buckets[i].end(), [&](int a, int b) { return rank[k][a] < rank[k][b]; });
        cmax = std::max(cmax, machine_completion(inst, k, buckets[i]));
      }
      if (cmax < best) {
        best = cmax;
        best_locs = locs;
        best_assign = assign;
      }

      // odometer: last job varies fastest
      int j = n - 1;
      while (j >= 0 && assign[j] == p - 1) assign[j--] = 0;
      if (j < 0) break;
      ++assign[j];
    }

    // next p-subset of {0..m-1} in lexicographic order
    int i = p - 1;
    while (i >= 0 && locs[i] == m - p + i) --i;
    if (i < 0) break;
    ++locs[i];
    for (int t = i + 1; t < p; ++t) locs[t] = locs[t - 1] + 1;
  }

  OracleResult res;
  res.makespan = best;
  res.work = work;
  for (int i = 0; i < p; ++i) {
    std::vector<int> jobs;
    for (int j = 0; j < n; ++j)
      if (best_assign[j] == i) jobs.push_back(j);
    if (jobs.empty()) continue;
    res.solution.machines.push_back(erd_schedule(inst, best_locs[i], std::move(jobs)));
  }
  res.solution.makespan = best;
  return res;
}

}  // namespace scheloc
