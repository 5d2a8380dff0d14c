#include "scheloc/lp.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace scheloc::lps {

int LinearProgram::add_row(RowSense s, double b, std::string name) {
  sense.push_back(s);
  rhs.push_back(b);
  if (!name.empty()) {
    row_name.resize(rhs.size());
    row_name.back() = std::move(name);
  } else if (!row_name.empty()) {
    row_name.resize(rhs.size());
  }
  return num_rows() - 1;
}

int LinearProgram::add_col(double l, double h, double c, const std::vector<std::pair<int, double>>& entries,
                           std::string name) {
  if (std::isinf(l) && std::isinf(h)) throw std::logic_error("lp: free variables are not supported");
  if (l > h) throw std::logic_error("lp: column lower bound exceeds upper bound");
  int prev = -1;
  for (const auto& [r, v] : entries) {
    if (r <= prev || r >= num_rows()) throw std::logic_error("lp: column entries must have strictly increasing valid rows");
    prev = r;
    row_index.push_back(r);
    value.push_back(v);
  }
  col_begin.push_back(static_cast<int>(row_index.size()));
  obj.push_back(c);
  lo.push_back(l);
  hi.push_back(h);
  if (!name.empty()) {
    col_name.resize(obj.size());
    col_name.back() = std::move(name);
  } else if (!col_name.empty()) {
    col_name.resize(obj.size());
  }
  return num_cols() - 1;
}

void LinearProgram::set_bounds(int col, double new_lo, double new_hi) {
  if (new_lo > new_hi) throw std::logic_error("lp: column lower bound exceeds upper bound");
  lo[col] = new_lo;
  hi[col] = new_hi;
}

double LinearProgram::col_activity(int col, const std::vector<double>& x) const { return obj[col] * x[col]; }

namespace {

std::string cname(const LinearProgram& lp, int j) {
  if (j < static_cast<int>(lp.col_name.size()) && !lp.col_name[j].empty()) return lp.col_name[j];
  return "x" + std::to_string(j);
}

std::string rname(const LinearProgram& lp, int i) {
  if (i < static_cast<int>(lp.row_name.size()) && !lp.row_name[i].empty()) return lp.row_name[i];
  return "r" + std::to_string(i);
}

void write_term(std::ostream& out, double coef, const std::string& name, bool& first) {
  if (coef == 0) return;
  if (first) {
    if (coef < 0) out << "- ";
    first = false;
  } else {
    out << (coef < 0 ? " - " : " + ");
  }
  const double a = std::abs(coef);
  if (a != 1) out << a << ' ';
  out << name;
}

}  // namespace

void write_lp_text(const LinearProgram& lp, std::ostream& out, const std::vector<char>& integer_mask,
                   const std::string& title) {
  out << "\\ " << title << '\n';
  out << (lp.maximize ? "Maximize" : "Minimize") << '\n';
  out << " obj:";
  bool first = true;
  out << ' ';
  for (int j = 0; j < lp.num_cols(); ++j) write_term(out, lp.obj[j], cname(lp, j), first);
  if (first) out << "0";
  out << '\n';

  // transpose to rows for printing
  std::vector<std::vector<std::pair<int, double>>> rows(lp.num_rows());
  for (int j = 0; j < lp.num_cols(); ++j)
    for (int t = lp.col_begin[j]; t < lp.col_begin[j + 1]; ++t) rows[lp.row_index[t]].push_back({j, lp.value[t]});

  out << "Subject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    out << ' ' << rname(lp, i) << ':';
    bool f = true;
    out << ' ';
    for (const auto& [j, v] : rows[i]) write_term(out, v, cname(lp, j), f);
    if (f) out << "0";
    switch (lp.sense[i]) {
      case RowSense::LE: out << " <= "; break;
      case RowSense::EQ: out << " = "; break;
      case RowSense::GE: out << " >= "; break;
    }
    out << lp.rhs[i] << '\n';
  }

  out << "Bounds\n";
  for (int j = 0; j < lp.num_cols(); ++j) {
    out << ' ';
    if (std::isinf(lp.lo[j]))
      out << "-inf";
    else
      out << lp.lo[j];
    out << " <= " << cname(lp, j) << " <= ";
    if (std::isinf(lp.hi[j]))
      out << "+inf";
    else
      out << lp.hi[j];
    out << '\n';
  }

  if (!integer_mask.empty()) {
    out << "General\n";
    for (int j = 0; j < lp.num_cols() && j < static_cast<int>(integer_mask.size()); ++j)
      if (integer_mask[j]) out << ' ' << cname(lp, j) << '\n';
  }
  out << "End\n";
}

namespace {

// Row activities recomputed from the matrix; shared by the audit checks.
std::vector<double> activities(const LinearProgram& lp, const std::vector<double>& x) {
  std::vector<double> act(lp.num_rows(), 0.0);
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (x[j] == 0) continue;
    for (int t = lp.col_begin[j]; t < lp.col_begin[j + 1]; ++t) act[lp.row_index[t]] += lp.value[t] * x[j];
  }
  return act;
}

}  // namespace

void Audit::record_lp(const LinearProgram& lp, const LpResult& r) {
  ++lp_solves;
  if (r.status != LpStatus::Optimal) return;

  double primal = 0;
  for (int j = 0; j < lp.num_cols(); ++j) primal += lp.obj[j] * r.x[j];

  const auto act = activities(lp, r.x);
  for (int i = 0; i < lp.num_rows(); ++i) {
    const double tolscale = 1.0 + std::abs(lp.rhs[i]);
    double viol = 0;
    switch (lp.sense[i]) {
      case RowSense::LE: viol = act[i] - lp.rhs[i]; break;
      case RowSense::GE: viol = lp.rhs[i] - act[i]; break;
      case RowSense::EQ: viol = std::abs(act[i] - lp.rhs[i]); break;
    }
    max_row_violation = std::max(max_row_violation, viol / tolscale);
    // complementary slackness: inactive row implies zero dual
    const double slack = std::abs(act[i] - lp.rhs[i]);
    max_cs_violation = std::max(max_cs_violation, std::abs(r.duals[i]) * slack / (1.0 + std::abs(primal)));
  }

  // dual objective rebuilt from duals + reduced costs + variable statuses
  double dual = 0;
  for (int i = 0; i < lp.num_rows(); ++i) dual += r.duals[i] * lp.rhs[i];
  for (int j = 0; j < lp.num_cols(); ++j) {
    if (r.var_status[j] == VarStatus::AtLower && lp.lo[j] != 0) dual += r.reduced_costs[j] * lp.lo[j];
    if (r.var_status[j] == VarStatus::AtUpper) dual += r.reduced_costs[j] * lp.hi[j];
    const double bound_viol = std::max(lp.lo[j] - r.x[j], r.x[j] - lp.hi[j]);
    max_bound_violation = std::max(max_bound_violation, bound_viol);
    const double dist = std::min(std::abs(r.x[j] - lp.lo[j]), std::abs(lp.hi[j] - r.x[j]));
    if (std::isfinite(dist)) max_cs_violation = std::max(max_cs_violation, std::abs(r.reduced_costs[j]) * dist / (1.0 + std::abs(primal)));
  }

  max_rel_duality_gap = std::max(max_rel_duality_gap, std::abs(primal - dual) / (1.0 + std::abs(primal)));
}

bool Audit::check_incumbent(const LinearProgram& lp, const std::vector<double>& x, const std::vector<char>& integer_mask) {
  ++incumbents_checked;
  const double tol = 1e-6;
  bool ok = x.size() == static_cast<std::size_t>(lp.num_cols());
  if (ok) {
    for (int j = 0; j < lp.num_cols() && ok; ++j) {
      if (x[j] < lp.lo[j] - tol || x[j] > lp.hi[j] + tol) ok = false;
      if (j < static_cast<int>(integer_mask.size()) && integer_mask[j] && std::abs(x[j] - std::round(x[j])) > tol) ok = false;
    }
    const auto act = activities(lp, x);
    for (int i = 0; i < lp.num_rows() && ok; ++i) {
      const double t = tol * (1.0 + std::abs(lp.rhs[i]));
      switch (lp.sense[i]) {
        case RowSense::LE: ok = act[i] <= lp.rhs[i] + t; break;
        case RowSense::GE: ok = act[i] >= lp.rhs[i] - t; break;
        case RowSense::EQ: ok = std::abs(act[i] - lp.rhs[i]) <= t; break;
      }
    }
  }
  if (!ok) ++incumbent_failures;
  return ok;
}

}  // namespace scheloc::lps
