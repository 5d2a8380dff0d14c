#include "scheloc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "scheloc/rng.hpp"

namespace scheloc {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& origin, const std::string& msg) {
  throw ParseError(origin + ": " + msg);
}

std::string stem_of(const std::string& path) {
  auto s = std::filesystem::path(path).stem().string();
  return s.empty() ? path : s;
}

// Tokenizes a stream, dropping '#' comments to end of line.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(std::move(tok));
  }
  return tokens;
}

class TokenCursor {
 public:
  TokenCursor(std::vector<std::string> tokens, std::string origin)
      : tokens_(std::move(tokens)), origin_(std::move(origin)) {}

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    if (done()) parse_fail(origin_, "unexpected end of file");
    return tokens_[pos_];
  }
  std::string take() {
    std::string t = peek();
    ++pos_;
    return t;
  }

  std::int64_t take_int(const std::string& what) {
    const std::string t = take();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      parse_fail(origin_, "expected integer for " + what + ", got '" + t + "'");
    return v;
  }

  double take_double(const std::string& what) {
    const std::string t = take();
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      parse_fail(origin_, "expected number for " + what + ", got '" + t + "'");
    return v;
  }

  const std::string& origin() const { return origin_; }

 private:
  std::vector<std::string> tokens_;
  std::string origin_;
  std::size_t pos_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return in;
}

// Fixed-point decimal: floor to 2 decimals, times 100. "3.459" -> 345,
// "3.4" -> 340, "7" -> 700. Sets had_dot when a decimal point was present.
std::int64_t parse_centi(const std::string& tok, bool& had_dot, const std::string& origin) {
  const auto dot = tok.find('.');
  const std::string int_part = dot == std::string::npos ? tok : tok.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : tok.substr(dot + 1);
  had_dot = dot != std::string::npos;

  if (int_part.empty() && frac.empty()) parse_fail(origin, "bad number '" + tok + "'");
  for (char c : int_part)
    if (!std::isdigit(static_cast<unsigned char>(c))) parse_fail(origin, "bad number '" + tok + "'");
  for (char c : frac)
    if (!std::isdigit(static_cast<unsigned char>(c))) parse_fail(origin, "bad number '" + tok + "'");

  std::int64_t whole = 0;
  if (!int_part.empty()) {
    auto [ptr, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole);
    if (ec != std::errc{} || ptr != int_part.data() + int_part.size()) parse_fail(origin, "bad number '" + tok + "'");
  }
  frac.resize(2, '0');
  return whole * 100 + (frac.empty() ? 0 : std::stoll(frac));
}

}  // namespace

Instance read_instance(std::istream& in, const std::string& origin) {
  TokenCursor cur(tokenize(in), origin);

  Instance inst;
  inst.name = stem_of(origin);
  inst.n = static_cast<int>(cur.take_int("n"));
  inst.m = static_cast<int>(cur.take_int("m"));
  inst.p = static_cast<int>(cur.take_int("p"));
  inst.scale = cur.take_int("scale");
  if (inst.n < 1 || inst.n > 100000) parse_fail(origin, "implausible n=" + std::to_string(inst.n));
  if (inst.m < 1 || inst.m > 100000) parse_fail(origin, "implausible m=" + std::to_string(inst.m));

  inst.proc.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) inst.proc[j] = cur.take_int("processing time");
  inst.release.assign(inst.n, std::vector<Time>(inst.m));
  for (int j = 0; j < inst.n; ++j)
    for (int k = 0; k < inst.m; ++k) inst.release[j][k] = cur.take_int("release date");

  if (!cur.done() && cur.peek() == "coords") {
    cur.take();
    inst.job_xy.resize(inst.n);
    inst.loc_xy.resize(inst.m);
    for (auto& pt : inst.job_xy) {
      pt[0] = cur.take_double("job x");
      pt[1] = cur.take_double("job y");
    }
    for (auto& pt : inst.loc_xy) {
      pt[0] = cur.take_double("location x");
      pt[1] = cur.take_double("location y");
    }
  }
  if (!cur.done()) parse_fail(origin, "trailing token '" + cur.peek() + "'");

  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    parse_fail(origin, e.what());
  }
  return inst;
}

Instance read_instance(const std::string& path) {
  auto in = open_or_fail(path);
  return read_instance(in, path);
}

void write_instance(const Instance& inst, std::ostream& out) {
  out << inst.n << ' ' << inst.m << ' ' << inst.p << ' ' << inst.scale << '\n';
  for (int j = 0; j < inst.n; ++j) out << inst.proc[j] << (j + 1 < inst.n ? ' ' : '\n');
  for (int j = 0; j < inst.n; ++j)
    for (int k = 0; k < inst.m; ++k) out << inst.release[j][k] << (k + 1 < inst.m ? ' ' : '\n');
  if (!inst.job_xy.empty()) {
    out << "coords\n";
    for (const auto& pt : inst.job_xy) out << format_double(pt[0]) << ' ' << format_double(pt[1]) << '\n';
    for (const auto& pt : inst.loc_xy) out << format_double(pt[0]) << ' ' << format_double(pt[1]) << '\n';
  }
}

void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_instance(inst, out);
  out.flush();
  if (!out) throw std::runtime_error(path + ": write failed");
}

Instance read_instance_literature(const std::string& path) {
  auto in = open_or_fail(path);
  TokenCursor cur(tokenize(in), path);

  Instance inst;
  inst.name = stem_of(path);
  inst.n = static_cast<int>(cur.take_int("n"));
  inst.m = static_cast<int>(cur.take_int("m"));
  inst.p = static_cast<int>(cur.take_int("p"));
  if (inst.n < 1 || inst.n > 100000 || inst.m < 1 || inst.m > 100000 || inst.p < 1)
    parse_fail(path, "header does not look like 'n m p'");

  // Parse everything at 1/100 resolution first; drop the factor afterwards
  // when no token carried a decimal point.
  bool fractional = false;
  std::vector<std::int64_t> proc_c(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    bool dot = false;
    proc_c[j] = parse_centi(cur.take(), dot, path);
    fractional |= dot;
  }
  std::vector<std::int64_t> rel_c(static_cast<std::size_t>(inst.n) * inst.m);
  for (auto& v : rel_c) {
    bool dot = false;
    v = parse_centi(cur.take(), dot, path);
    fractional |= dot;
  }
  if (!cur.done()) parse_fail(path, "file has more tokens than an n x m instance needs");

  inst.scale = fractional ? 100 : 1;
  const std::int64_t div = fractional ? 1 : 100;
  inst.proc.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) inst.proc[j] = proc_c[j] / div;
  inst.release.assign(inst.n, std::vector<Time>(inst.m));
  for (int j = 0; j < inst.n; ++j)
    for (int k = 0; k < inst.m; ++k) inst.release[j][k] = rel_c[static_cast<std::size_t>(j) * inst.m + k] / div;

  try {
    inst.validate();
  } catch (const std::invalid_argument& e) {
    parse_fail(path, e.what());
  }
  return inst;
}

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("generator: n must be >= 1");
  if (cfg.m < 2) throw std::invalid_argument("generator: m must be >= 2");
  if (cfg.p < 1 || cfg.p >= cfg.m) throw std::invalid_argument("generator: need 1 <= p < m");

  Rng rng(cfg.seed);
  Instance inst;
  inst.n = cfg.n;
  inst.m = cfg.m;
  inst.p = cfg.p;
  inst.name = "gen_n" + std::to_string(cfg.n) + "_m" + std::to_string(cfg.m) + "_p" + std::to_string(cfg.p) + "_s" +
              std::to_string(cfg.seed);

  const double side = static_cast<double>(cfg.n);
  inst.job_xy.resize(inst.n);
  for (auto& pt : inst.job_xy) {
    pt[0] = rng.uniform_real(0.0, side);
    pt[1] = rng.uniform_real(0.0, side);
  }
  inst.loc_xy.resize(inst.m);
  for (auto& pt : inst.loc_xy) {
    pt[0] = rng.uniform_real(0.0, side);
    pt[1] = rng.uniform_real(0.0, side);
  }

  const Time p_lo = std::max<Time>(1, cfg.n / 10);
  const Time p_hi = std::max<Time>(1, cfg.n / 2);
  inst.proc.resize(inst.n);
  for (auto& v : inst.proc) v = rng.uniform_int(p_lo, p_hi);

  inst.release.assign(inst.n, std::vector<Time>(inst.m));
  for (int j = 0; j < inst.n; ++j)
    for (int k = 0; k < inst.m; ++k) {
      const double dx = inst.job_xy[j][0] - inst.loc_xy[k][0];
      const double dy = inst.job_xy[j][1] - inst.loc_xy[k][1];
      inst.release[j][k] = static_cast<Time>(std::floor(std::hypot(dx, dy)));
    }

  inst.validate();
  return inst;
}

void write_solution(const SolutionRecord& rec, std::ostream& out) {
  json j;
  j["instance"] = rec.meta.instance_name;
  j["stage"] = rec.meta.stage;
  j["wall_time_s"] = rec.meta.wall_time_s;
  j["makespan"] = rec.solution.makespan;
  j["lb"] = rec.bounds.lb;
  j["ub"] = rec.bounds.ub;
  j["optimal"] = rec.bounds.optimal;
  j["machines"] = json::array();
  for (const auto& ms : rec.solution.machines) {
    json jm;
    jm["location"] = ms.location;
    jm["jobs"] = json::array();
    for (const auto& sj : ms.jobs) jm["jobs"].push_back({{"job", sj.job}, {"start", sj.start}, {"completion", sj.completion}});
    j["machines"].push_back(std::move(jm));
  }
  out << j.dump(2) << '\n';
}

void write_solution(const SolutionRecord& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  write_solution(rec, out);
}

SolutionRecord read_solution(std::istream& in, const std::string& origin) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(origin, std::string("invalid JSON: ") + e.what());
  }

  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) parse_fail(origin, std::string("missing key '") + key + "'");
    return j.at(key);
  };

  SolutionRecord rec;
  try {
    rec.meta.instance_name = need("instance").get<std::string>();
    rec.meta.stage = need("stage").get<std::string>();
    rec.meta.wall_time_s = need("wall_time_s").get<double>();
    rec.solution.makespan = need("makespan").get<Time>();
    rec.bounds.lb = need("lb").get<Time>();
    rec.bounds.ub = need("ub").get<Time>();
    rec.bounds.optimal = need("optimal").get<bool>();

    const json& machines = need("machines");
    if (!machines.is_array() || machines.empty()) parse_fail(origin, "'machines' must be a non-empty array");
    for (const auto& jm : machines) {
      MachineSchedule ms;
      ms.location = jm.at("location").get<int>();
      for (const auto& sj : jm.at("jobs"))
        ms.jobs.push_back({sj.at("job").get<int>(), sj.at("start").get<Time>(), sj.at("completion").get<Time>()});
      rec.solution.machines.push_back(std::move(ms));
    }
  } catch (const json::exception& e) {
    parse_fail(origin, std::string("bad solution schema: ") + e.what());
  }

  if (rec.bounds.lb > rec.bounds.ub) parse_fail(origin, "lb exceeds ub");
  if (rec.bounds.optimal && rec.bounds.lb != rec.bounds.ub) parse_fail(origin, "optimal flag set but lb != ub");
  return rec;
}

SolutionRecord read_solution(const std::string& path) {
  auto in = open_or_fail(path);
  return read_solution(in, path);
}

}  // namespace scheloc
