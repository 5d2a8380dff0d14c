#include "scheloc/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace scheloc {

namespace {

constexpr std::array<int, 10> kBucketTop = {1, 2, 3, 4, 5, 10, 15, 20, 25, 50};

int bucket_index_of(int n, int p) {
  for (int i = 0; i < static_cast<int>(kBucketTop.size()); ++i)
    if (static_cast<long long>(n) <= static_cast<long long>(kBucketTop[i]) * p) return i;
  return static_cast<int>(kBucketTop.size());  // (50, inf)
}

std::string bucket_label(int index) {
  if (index == 0) return "(0, 1]";
  if (index >= static_cast<int>(kBucketTop.size())) return "(50, inf)";
  char buf[32];
  std::snprintf(buf, sizeof buf, "(%d, %d]", kBucketTop[index - 1], kBucketTop[index]);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string fixed2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string ratio_bucket(int n, int p) {
  if (n <= 0 || p <= 0) throw std::invalid_argument("ratio_bucket: n and p must be positive");
  return bucket_label(bucket_index_of(n, p));
}

std::string family_of(const std::string& name) {
  const auto cut = name.find('_');
  return cut == std::string::npos ? name : name.substr(0, cut);
}

void write_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "set,ratio_bucket,n,m,p,lb,ub,gap_pct,stage_closed,time_s\n";
  for (const BenchRow& r : rows) {
    out << csv_field(r.set) << ',' << csv_field(r.ratio_bucket) << ',' << r.n << ',' << r.m << ','
        << r.p << ',' << r.lb << ',' << r.ub << ',' << fixed2(r.gap_pct) << ','
        << csv_field(r.stage_closed) << ',' << fixed2(r.time_s) << '\n';
  }
}

std::vector<BenchGroup> aggregate(const std::vector<BenchRow>& rows) {
  std::map<std::pair<std::string, int>, BenchGroup> acc;
  for (const BenchRow& r : rows) {
    // recompute the index from (n, p) so callers cannot desynchronize the two
    const int idx = bucket_index_of(r.n, r.p);
    BenchGroup& g = acc[{r.set, idx}];
    if (g.count == 0) {
      g.set = r.set;
      g.ratio_bucket = bucket_label(idx);
      g.bucket_index = idx;
    }
    ++g.count;
    g.avg_gap_pct += r.gap_pct;
    g.avg_time_s += r.time_s;
    if (r.lb == r.ub) ++g.closed;
    if (r.stage_closed == "ils") ++g.by_ils;
    else if (r.stage_closed == "cg") ++g.by_cg;
    else if (r.stage_closed == "af_cg") ++g.by_af_cg;
    else if (r.stage_closed == "af_subset_m") ++g.by_af_subset_m;
    else if (r.stage_closed == "af_full") ++g.by_af_full;
  }
  std::vector<BenchGroup> out;
  out.reserve(acc.size());
  for (auto& [key, g] : acc) {
    g.avg_gap_pct /= g.count;
    g.avg_time_s /= g.count;
    out.push_back(std::move(g));
  }
  return out;  // map order is already (set, bucket_index)
}

void write_markdown(const std::vector<BenchGroup>& groups, std::ostream& out) {
  out << "| set | n/p | #inst | gap (%) | time (s) | #opt | ils | cg | af_cg | af_subset_m | "
         "af_full |\n";
  out << "|---|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const BenchGroup& g : groups) {
    out << "| " << g.set << " | " << g.ratio_bucket << " | " << g.count << " | "
        << fixed2(g.avg_gap_pct) << " | " << fixed2(g.avg_time_s) << " | " << g.closed << " | "
        << g.by_ils << " | " << g.by_cg << " | " << g.by_af_cg << " | " << g.by_af_subset_m
        << " | " << g.by_af_full << " |\n";
  }
}

}  // namespace scheloc
