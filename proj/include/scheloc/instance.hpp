#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace scheloc {

// All times (processing, release, makespan) are integral. Instances from
// sources with fractional data are scaled to integers on read; `scale`
// records the multiplier so reports can convert back.
using Time = std::int64_t;

// One instance of the discrete parallel-machine makespan scheduling-location
// problem: n jobs, m candidate machine locations, exactly p machines to
// open. Job j becomes available at location k no earlier than release[j][k];
// processing times are location-independent.
struct Instance {
  std::string name;
  int n = 0;  // jobs
  int m = 0;  // candidate locations
  int p = 0;  // machines to place, p < m
  Time scale = 1;

  std::vector<Time> proc;                  // size n, proc[j] >= 1
  std::vector<std::vector<Time>> release;  // n rows of m entries, >= 0

  // Planar coordinates when the instance was generated from points on a
  // square (jobs then locations); empty otherwise. Releases of generated
  // instances equal floor(euclidean distance) of the corresponding points.
  std::vector<std::array<double, 2>> job_xy;
  std::vector<std::array<double, 2>> loc_xy;

  Time rel(int job, int loc) const { return release[job][loc]; }

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

}  // namespace scheloc
