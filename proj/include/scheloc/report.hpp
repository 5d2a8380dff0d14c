#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scheloc/instance.hpp"

namespace scheloc {

// One solved instance in a benchmark table.
struct BenchRow {
  std::string set;           // instance family: name prefix before the first '_'
  std::string ratio_bucket;  // n/p bucket label, e.g. "(5, 10]"
  int n = 0, m = 0, p = 0;
  Time lb = 0;
  Time ub = 0;
  double gap_pct = 0;        // 100(ub - lb)/lb
  std::string stage_closed;  // stage after which lb == ub first held; "" if open
  double time_s = 0;
};

// Bucket label for the ratio n/p over the fixed boundaries
// 1, 2, 3, 4, 5, 10, 15, 20, 25, 50; ratios above 50 fall into "(50, inf)".
// Upper bounds are inclusive and evaluated exactly (n <= bound * p).
std::string ratio_bucket(int n, int p);

// Family prefix of an instance name: characters before the first '_'
// ("setB_07_3" -> "setB"); the whole name when it has no underscore.
std::string family_of(const std::string& name);

// Per-instance rows, one line each, header first. Fields containing commas,
// quotes or newlines are quoted.
void write_csv(const std::vector<BenchRow>& rows, std::ostream& out);

// Rows aggregated per (set, ratio bucket): instance count, average gap and
// time, and closure attribution per stage.
struct BenchGroup {
  std::string set;
  std::string ratio_bucket;
  int bucket_index = 0;  // position in the fixed bucket order, for sorting
  int count = 0;
  double avg_gap_pct = 0;
  double avg_time_s = 0;
  int closed = 0;  // rows with lb == ub
  int by_ils = 0, by_cg = 0, by_af_cg = 0, by_af_subset_m = 0, by_af_full = 0;
};

std::vector<BenchGroup> aggregate(const std::vector<BenchRow>& rows);

// Markdown pipe table of the aggregated groups, one row per (set, bucket).
void write_markdown(const std::vector<BenchGroup>& groups, std::ostream& out);

}  // namespace scheloc
