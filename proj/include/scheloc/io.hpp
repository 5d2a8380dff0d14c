#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "scheloc/instance.hpp"
#include "scheloc/solution.hpp"

namespace scheloc {

// Raised for any malformed input file; the message names the file and the
// offending token or line.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Native text format (whitespace separated, '#' starts a comment line):
//
//   n m p scale
//   p_0 ... p_{n-1}
//   r_{0,0} ... r_{0,m-1}        n release rows
//   ...
//   coords                       optional section
//   x y                          n job points, then m location points
//
// Writing then reading an instance reproduces it exactly; coordinates are
// printed as shortest round-trip decimals, all times as integers.
Instance read_instance(const std::string& path);
Instance read_instance(std::istream& in, const std::string& origin);
void write_instance(const Instance& inst, const std::string& path);
void write_instance(const Instance& inst, std::ostream& out);

// Best-effort reader for the layout used by published instance files:
// a token stream of n, m, p, then n processing times, then an n x m release
// matrix. Values may be fractional; they are floored to 2 decimals and
// scaled by 100 (scale is recorded in the result). Anything that does not
// match this shape raises ParseError with a diagnostic.
Instance read_instance_literature(const std::string& path);

struct GeneratorConfig {
  int n = 0;
  int m = 0;
  int p = 0;
  std::uint64_t seed = 0;
};

// Random planar instance on an n x n square: n job points and m location
// points drawn uniformly (jobs first, x before y), processing times uniform
// integers in [max(1, floor(n/10)), max(1, floor(n/2))], releases
// floor(euclidean distance). Fully determined by the seed.
Instance generate_instance(const GeneratorConfig& cfg);

struct SolveMeta {
  std::string instance_name;
  std::string stage;  // which component produced the incumbent
  double wall_time_s = 0;
};

struct SolutionRecord {
  Solution solution;
  Bounds bounds;
  SolveMeta meta;
};

// Solutions are stored as JSON (schema documented in README). Reading
// validates structure: required keys, machine/job shapes, a non-empty set of
// chosen locations, integral times. Semantic checks against an instance are
// evaluate()'s job.
void write_solution(const SolutionRecord& rec, const std::string& path);
void write_solution(const SolutionRecord& rec, std::ostream& out);
SolutionRecord read_solution(const std::string& path);
SolutionRecord read_solution(std::istream& in, const std::string& origin);

}  // namespace scheloc
