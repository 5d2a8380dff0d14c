#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace scheloc::lps {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense : char { LE = 'L', EQ = 'E', GE = 'G' };

// Sparse column-major LP:  min (or max) c'x  s.t.  Ax {<=,=,>=} b,  lo <= x <= hi.
// Rows are declared first, columns appended with their sparse entries —
// the natural build order for column generation.
struct LinearProgram {
  std::vector<int> col_begin{0};
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> obj, lo, hi;
  std::vector<RowSense> sense;
  std::vector<double> rhs;
  bool maximize = false;
  std::vector<std::string> col_name, row_name;  // optional, used by LP text export

  int num_cols() const { return static_cast<int>(obj.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }

  int add_row(RowSense s, double b, std::string name = {});
  // Entries must have strictly increasing valid row indices. Bounds may use
  // +/-kInf except both at once (free variables are not supported by the
  // solver). Returns the column index.
  int add_col(double lo, double hi, double c, const std::vector<std::pair<int, double>>& entries, std::string name = {});
  void set_bounds(int col, double new_lo, double new_hi);

  double col_activity(int col, const std::vector<double>& x) const;  // objective contribution only
};

// CPLEX-style LP text export (objective, rows, bounds, integer section from
// `integer_mask` when given). Deterministic naming: unnamed entities get
// x<i> / r<i>.
void write_lp_text(const LinearProgram& lp, std::ostream& out, const std::vector<char>& integer_mask = {},
                   const std::string& title = "lp");

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class VarStatus : char { Basic = 0, AtLower = 1, AtUpper = 2 };

// Duals follow the convention  reduced_cost = c - A'y  for the minimization
// form; >= rows carry y >= 0, <= rows y <= 0, = rows free. For maximize
// problems everything (objective, duals, reduced costs) is reported for the
// original maximization sign.
struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0;
  double dual_objective = 0;
  std::vector<double> x;              // structural values
  std::vector<double> duals;          // per row
  std::vector<double> reduced_costs;  // per structural column
  std::vector<VarStatus> var_status;  // per structural column
  std::int64_t iterations = 0;
};

struct Audit;

struct SimplexOptions {
  double tol_feas = 1e-7;
  double tol_dual = 1e-7;
  double tol_pivot = 1e-9;
  int refactor_every = 120;
  // 0 = automatic limit scaled to problem size
  std::int64_t max_iterations = 0;
  Audit* audit = nullptr;
};

// Two-phase bounded-variable primal simplex with a dense explicit basis
// inverse. Deterministic: Dantzig pricing with lowest-index tie-breaks and a
// Bland fallback after objective stalls, so cycling terminates.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opt = {});

// Independent solution checker fed by the solvers; accumulates worst-case
// violations so a test run can assert global numerical health. All checks
// recompute activities from the matrix, nothing is taken from solver state.
struct Audit {
  std::int64_t lp_solves = 0;
  double max_rel_duality_gap = 0;
  double max_row_violation = 0;
  double max_bound_violation = 0;
  double max_cs_violation = 0;  // complementary slackness
  std::int64_t incumbents_checked = 0;
  std::int64_t incumbent_failures = 0;

  void record_lp(const LinearProgram& lp, const LpResult& r);
  // Verifies an integer incumbent: bounds, rows, integrality on masked
  // columns (tolerance 1e-6). Returns whether it passed; failures are
  // tallied, never silently dropped.
  bool check_incumbent(const LinearProgram& lp, const std::vector<double>& x, const std::vector<char>& integer_mask);
};

}  // namespace scheloc::lps
