#include "scheloc/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace scheloc {

MachineSchedule erd_schedule(const Instance& inst, int location, std::vector<int> jobs) {
  std::sort(jobs.begin(), jobs.end(), [&](int a, int b) { return erd_before(inst, location, a, b); });
  MachineSchedule ms;
  ms.location = location;
  ms.jobs.reserve(jobs.size());
  Time clock = 0;
  for (int j : jobs) {
    const Time start = std::max(clock, inst.rel(j, location));
    clock = start + inst.proc[j];
    ms.jobs.push_back({j, start, clock});
  }
  return ms;
}

Time evaluate(const Solution& sol, const Instance& inst) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("solution: " + msg); };

  if (sol.machines.empty()) fail("no machines");
  if (sol.machines.size() > static_cast<std::size_t>(inst.p))
    fail("uses " + std::to_string(sol.machines.size()) + " machines, at most p=" + std::to_string(inst.p) + " allowed");

  std::vector<char> loc_used(inst.m, 0);
  std::vector<char> job_seen(inst.n, 0);
  Time makespan = 0;

  for (const auto& ms : sol.machines) {
    if (ms.location < 0 || ms.location >= inst.m) fail("location " + std::to_string(ms.location) + " out of range");
    if (loc_used[ms.location]) fail("location " + std::to_string(ms.location) + " used twice");
    loc_used[ms.location] = 1;

    Time clock = 0;
    Time prev_release = -1;
    for (const auto& sj : ms.jobs) {
      if (sj.job < 0 || sj.job >= inst.n) fail("job " + std::to_string(sj.job) + " out of range");
      if (job_seen[sj.job]) fail("job " + std::to_string(sj.job) + " scheduled twice");
      job_seen[sj.job] = 1;

      const Time r = inst.rel(sj.job, ms.location);
      if (r < prev_release)
        fail("job " + std::to_string(sj.job) + " at location " + std::to_string(ms.location) + " breaks release order");
      prev_release = r;

      const Time start = std::max(clock, r);
      if (sj.start != start)
        fail("job " + std::to_string(sj.job) + " starts at " + std::to_string(sj.start) + ", semi-active start is " + std::to_string(start));
      if (sj.completion != start + inst.proc[sj.job])
        fail("job " + std::to_string(sj.job) + " completion != start + processing time");
      clock = sj.completion;
    }
    makespan = std::max(makespan, clock);
  }

  for (int j = 0; j < inst.n; ++j)
    if (!job_seen[j]) fail("job " + std::to_string(j) + " missing");

  if (sol.makespan != makespan)
    fail("stored makespan " + std::to_string(sol.makespan) + " != recomputed " + std::to_string(makespan));
  return makespan;
}

Time initial_lower_bound(const Instance& inst) {
  const Time total = std::accumulate(inst.proc.begin(), inst.proc.end(), Time{0});
  const Time balanced = (total + inst.p - 1) / inst.p;
  Time min_release = inst.release[0][0];
  for (int j = 0; j < inst.n; ++j)
    for (int k = 0; k < inst.m; ++k) min_release = std::min(min_release, inst.release[j][k]);
  return balanced + min_release;
}

double percent_gap(double ub, double lb) {
  if (!(lb > 0)) throw std::domain_error("percent_gap: lower bound must be positive");
  return 100.0 * (ub - lb) / lb;
}

double lr_gap(double opt, double lb) {
  if (!(opt > 0)) throw std::domain_error("lr_gap: optimum must be positive");
  return 100.0 * (opt - lb) / opt;
}

Time safe_ceil(double v) {
  return static_cast<Time>(std::ceil(v - 1e-6 * (1.0 + std::abs(v))));
}

}  // namespace scheloc
