#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "scheloc/instance.hpp"

namespace scheloc {

struct ScheduledJob {
  int job = -1;
  Time start = 0;
  Time completion = 0;
};

// Jobs on one opened machine, in processing order (non-decreasing release
// date at `location`; starts/completions are the semi-active timings).
struct MachineSchedule {
  int location = -1;
  std::vector<ScheduledJob> jobs;

  Time completion() const { return jobs.empty() ? 0 : jobs.back().completion; }
};

struct Solution {
  std::vector<MachineSchedule> machines;  // at most p, distinct locations
  Time makespan = 0;

  std::vector<int> chosen_locations() const {
    std::vector<int> locs;
    locs.reserve(machines.size());
    for (const auto& ms : machines) locs.push_back(ms.location);
    return locs;
  }
};

// Running lower/upper bound pair. `optimal` is only set once lb == ub.
struct Bounds {
  Time lb = 0;
  Time ub = std::numeric_limits<Time>::max();
  bool optimal = false;
};

}  // namespace scheloc
