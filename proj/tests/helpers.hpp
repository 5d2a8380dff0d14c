#pragma once

// Shared test utilities: seeded random instances and tiny brute-force
// references that are independent of the library implementations they check.

#include <algorithm>
#include <limits>
#include <vector>

#include "scheloc/instance.hpp"
#include "scheloc/rng.hpp"

namespace testutil {

struct InstanceParams {
  int n_min = 3, n_max = 9;
  int m_min = 3, m_max = 5;
  int p_min = 1, p_max = 3;
  scheloc::Time proc_min = 1, proc_max = 9;
  scheloc::Time rel_min = 0, rel_max = 9;
};

inline scheloc::Instance random_instance(scheloc::Rng& rng, const InstanceParams& pr = {}) {
  scheloc::Instance inst;
  inst.n = static_cast<int>(rng.uniform_int(pr.n_min, pr.n_max));
  inst.m = static_cast<int>(rng.uniform_int(pr.m_min, pr.m_max));
  const int p_hi = std::min(pr.p_max, inst.m - 1);
  inst.p = static_cast<int>(rng.uniform_int(std::min(pr.p_min, p_hi), p_hi));
  inst.name = "rnd";
  inst.proc.resize(inst.n);
  for (auto& v : inst.proc) v = rng.uniform_int(pr.proc_min, pr.proc_max);
  inst.release.assign(inst.n, std::vector<scheloc::Time>(inst.m));
  for (auto& row : inst.release)
    for (auto& v : row) v = rng.uniform_int(pr.rel_min, pr.rel_max);
  inst.validate();
  return inst;
}

// Minimum completion time of one machine over all n! job permutations.
// O(n!) reference for the earliest-release-date rule; keep n small.
inline scheloc::Time best_permutation_completion(const scheloc::Instance& inst, int location, std::vector<int> jobs) {
  std::sort(jobs.begin(), jobs.end());
  scheloc::Time best = std::numeric_limits<scheloc::Time>::max();
  do {
    scheloc::Time clock = 0;
    for (int j : jobs) clock = std::max(clock, inst.rel(j, location)) + inst.proc[j];
    best = std::min(best, clock);
  } while (std::next_permutation(jobs.begin(), jobs.end()));
  return best;
}

}  // namespace testutil
