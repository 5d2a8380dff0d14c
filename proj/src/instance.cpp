#include "scheloc/instance.hpp"

#include <stdexcept>
#include <string>

namespace scheloc {

void Instance::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("instance: " + msg); };

  if (n < 1) fail("n must be >= 1, got " + std::to_string(n));
  if (m < 1) fail("m must be >= 1, got " + std::to_string(m));
  if (p < 1) fail("p must be >= 1, got " + std::to_string(p));
  if (p >= m) fail("p must be < m, got p=" + std::to_string(p) + " m=" + std::to_string(m));
  if (scale < 1) fail("scale must be >= 1");

  if (proc.size() != static_cast<std::size_t>(n)) fail("proc has " + std::to_string(proc.size()) + " entries, expected n=" + std::to_string(n));
  for (int j = 0; j < n; ++j)
    if (proc[j] < 1) fail("proc[" + std::to_string(j) + "] must be >= 1, got " + std::to_string(proc[j]));

  if (release.size() != static_cast<std::size_t>(n)) fail("release has " + std::to_string(release.size()) + " rows, expected n=" + std::to_string(n));
  for (int j = 0; j < n; ++j) {
    if (release[j].size() != static_cast<std::size_t>(m))
      fail("release row " + std::to_string(j) + " has " + std::to_string(release[j].size()) + " entries, expected m=" + std::to_string(m));
    for (int k = 0; k < m; ++k)
      if (release[j][k] < 0) fail("release[" + std::to_string(j) + "][" + std::to_string(k) + "] must be >= 0");
  }

  const bool any_xy = !job_xy.empty() || !loc_xy.empty();
  if (any_xy) {
    if (job_xy.size() != static_cast<std::size_t>(n)) fail("job coordinates present but count != n");
    if (loc_xy.size() != static_cast<std::size_t>(m)) fail("location coordinates present but count != m");
  }
}

}  // namespace scheloc
