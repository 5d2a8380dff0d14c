#include <doctest.h>

#include <cmath>
#include <sstream>

#include "scheloc/lp.hpp"
#include "scheloc/mip.hpp"
#include "scheloc/rng.hpp"

using namespace scheloc;
using namespace scheloc::lps;

TEST_CASE("simplex solves a small mixed-sense LP") {
  // min 2a + 3b - c
  //   a + b      >= 2
  //   a     + c  <= 4
  //       b + c   = 3
  //   0 <= a,b <= 10, 0 <= c <= 2
  LinearProgram lp;
  lp.add_row(RowSense::GE, 2);
  lp.add_row(RowSense::LE, 4);
  lp.add_row(RowSense::EQ, 3);
  lp.add_col(0, 10, 2, {{0, 1}, {1, 1}});
  lp.add_col(0, 10, 3, {{0, 1}, {2, 1}});
  lp.add_col(0, 2, -1, {{1, 1}, {2, 1}});

  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  // c at its upper bound 2, b = 1 from the equality, a = 1 from the >=
  CHECK(r.objective == doctest::Approx(2 * 1 + 3 * 1 - 2));
  CHECK(r.x[0] == doctest::Approx(1));
  CHECK(r.x[1] == doctest::Approx(1));
  CHECK(r.x[2] == doctest::Approx(2));
  CHECK(r.dual_objective == doctest::Approx(r.objective));
}

TEST_CASE("simplex detects infeasible and unbounded problems") {
  {
    LinearProgram lp;
    lp.add_row(RowSense::GE, 2);
    lp.add_row(RowSense::LE, 1);
    lp.add_col(0, 10, 1, {{0, 1}, {1, 1}});
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
  }
  {
    LinearProgram lp;  // min -x with x unbounded above
    lp.add_row(RowSense::GE, 0);
    lp.add_col(0, kInf, -1, {{0, 1}});
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
  }
}

TEST_CASE("simplex escapes the classic cycling example") {
  // Beale's example: Dantzig pricing cycles without an anti-cycling rule.
  // min -3/4 d + 150 e - 1/50 f + 6 g
  //  1/4 d - 60 e - 1/25 f + 9 g <= 0
  //  1/2 d - 90 e - 1/50 f + 3 g <= 0
  //                     f        <= 1
  LinearProgram lp;
  lp.add_row(RowSense::LE, 0);
  lp.add_row(RowSense::LE, 0);
  lp.add_row(RowSense::LE, 1);
  lp.add_col(0, kInf, -0.75, {{0, 0.25}, {1, 0.5}});
  lp.add_col(0, kInf, 150, {{0, -60}, {1, -90}});
  lp.add_col(0, kInf, -0.02, {{0, -1.0 / 25}, {1, -1.0 / 50}, {2, 1}});
  lp.add_col(0, kInf, 6, {{0, 9}, {1, 3}});

  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(-0.05));
}

TEST_CASE("maximization is handled by sign flip, duals reported for the original sense") {
  LinearProgram lp;
  lp.maximize = true;
  lp.add_row(RowSense::LE, 4);
  lp.add_row(RowSense::LE, 3);
  lp.add_col(0, kInf, 3, {{0, 2}, {1, 1}});
  lp.add_col(0, kInf, 2, {{0, 1}, {1, 1}});

  LpResult r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.objective == doctest::Approx(7));  // x=(1,2)
  CHECK(r.x[0] == doctest::Approx(1));
  CHECK(r.x[1] == doctest::Approx(2));
  CHECK(r.dual_objective == doctest::Approx(7));
}

TEST_CASE("random feasible LPs: optimality certified by strong duality and dual feasibility") {
  Rng rng(2024);
  Audit audit;
  for (int trial = 0; trial < 120; ++trial) {
    const int rows = static_cast<int>(rng.uniform_int(1, 8));
    const int cols = static_cast<int>(rng.uniform_int(1, 10));

    LinearProgram lp;
    std::vector<double> x0(cols);

    std::vector<std::vector<double>> dense(rows, std::vector<double>(cols, 0.0));
    for (auto& row : dense)
      for (auto& v : row)
        if (rng.uniform_int(0, 2) != 0) v = static_cast<double>(rng.uniform_int(-4, 4));

    std::vector<double> act(rows, 0.0);
    for (int j = 0; j < cols; ++j) {
      const double lo = static_cast<double>(rng.uniform_int(-3, 0));
      const double hi = lo + static_cast<double>(rng.uniform_int(1, 5));
      x0[j] = lo + (hi - lo) * 0.5;
      for (int i = 0; i < rows; ++i) act[i] += dense[i][j] * x0[j];
    }
    for (int i = 0; i < rows; ++i) {
      const int s = static_cast<int>(rng.uniform_int(0, 2));
      if (s == 0) lp.add_row(RowSense::LE, act[i] + static_cast<double>(rng.uniform_int(0, 3)));
      if (s == 1) lp.add_row(RowSense::GE, act[i] - static_cast<double>(rng.uniform_int(0, 3)));
      if (s == 2) lp.add_row(RowSense::EQ, act[i]);
    }
    for (int j = 0; j < cols; ++j) {
      std::vector<std::pair<int, double>> entries;
      for (int i = 0; i < rows; ++i)
        if (dense[i][j] != 0) entries.push_back({i, dense[i][j]});
      lp.add_col(x0[j] - 2.5, x0[j] + 2.5, static_cast<double>(rng.uniform_int(-5, 5)), entries);
    }

    SimplexOptions so;
    so.audit = &audit;
    LpResult r = solve_lp(lp, so);
    REQUIRE(r.status == LpStatus::Optimal);  // x0 is feasible by construction

    double obj0 = 0;
    for (int j = 0; j < cols; ++j) obj0 += lp.obj[j] * x0[j];
    CHECK(r.objective <= obj0 + 1e-7);

    // dual feasibility per variable status
    for (int j = 0; j < cols; ++j) {
      if (r.var_status[j] == VarStatus::AtLower) CHECK(r.reduced_costs[j] >= -1e-6);
      if (r.var_status[j] == VarStatus::AtUpper) CHECK(r.reduced_costs[j] <= 1e-6);
      if (r.var_status[j] == VarStatus::Basic) CHECK(std::abs(r.reduced_costs[j]) <= 1e-6);
    }
    // row dual signs: <= rows nonpositive, >= rows nonnegative (min problem)
    for (int i = 0; i < lp.num_rows(); ++i) {
      if (lp.sense[i] == RowSense::LE) CHECK(r.duals[i] <= 1e-6);
      if (lp.sense[i] == RowSense::GE) CHECK(r.duals[i] >= -1e-6);
    }
  }
  CHECK(audit.lp_solves == 120);
  CHECK(audit.max_rel_duality_gap <= 1e-6);
  CHECK(audit.max_row_violation <= 1e-6);
  CHECK(audit.max_bound_violation <= 1e-6);
  CHECK(audit.max_cs_violation <= 1e-6);
}

TEST_CASE("branch and bound solves small integer programs against enumeration") {
  Rng rng(777);
  Audit audit;
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = static_cast<int>(rng.uniform_int(1, 5));
    const int cols = static_cast<int>(rng.uniform_int(2, 6));

    LinearProgram lp;
    std::vector<std::vector<double>> dense(rows, std::vector<double>(cols, 0.0));
    for (auto& row : dense)
      for (auto& v : row)
        if (rng.uniform_int(0, 1) != 0) v = static_cast<double>(rng.uniform_int(-3, 3));
    for (int i = 0; i < rows; ++i)
      lp.add_row(rng.uniform_int(0, 1) ? RowSense::LE : RowSense::GE, static_cast<double>(rng.uniform_int(-2, 4)));
    for (int j = 0; j < cols; ++j) {
      std::vector<std::pair<int, double>> entries;
      for (int i = 0; i < rows; ++i)
        if (dense[i][j] != 0) entries.push_back({i, dense[i][j]});
      lp.add_col(0, 1, static_cast<double>(rng.uniform_int(-5, 5)), entries);
    }
    std::vector<char> mask(cols, 1);

    // exhaustive reference over all 0/1 points
    double best = kInf;
    for (int bits = 0; bits < (1 << cols); ++bits) {
      bool ok = true;
      for (int i = 0; i < rows && ok; ++i) {
        double a = 0;
        for (int j = 0; j < cols; ++j)
          if (bits & (1 << j)) a += dense[i][j];
        ok = lp.sense[i] == RowSense::LE ? a <= lp.rhs[i] + 1e-9 : a >= lp.rhs[i] - 1e-9;
      }
      if (!ok) continue;
      double v = 0;
      for (int j = 0; j < cols; ++j)
        if (bits & (1 << j)) v += lp.obj[j];
      best = std::min(best, v);
    }

    MipOptions mo;
    mo.audit = &audit;
    MipResult r = solve_mip(lp, mask, nullptr, mo);
    if (best == kInf) {
      CHECK(r.status == MipStatus::Infeasible);
    } else {
      REQUIRE(r.status == MipStatus::Optimal);
      CHECK(r.objective == doctest::Approx(best));
      CHECK(r.bound == doctest::Approx(best));
      for (int j = 0; j < cols; ++j) CHECK(std::abs(r.x[j] - std::round(r.x[j])) <= 1e-9);
    }
  }
  CHECK(audit.incumbent_failures == 0);
  CHECK(audit.max_rel_duality_gap <= 1e-6);
}

TEST_CASE("mip warm starts: validated, kept as incumbent, rejected when wrong") {
  LinearProgram lp;  // min x + y  s.t.  x + y >= 1, binaries
  lp.add_row(RowSense::GE, 1);
  lp.add_col(0, 1, 1, {{0, 1}});
  lp.add_col(0, 1, 1, {{0, 1}});
  std::vector<char> mask = {1, 1};

  std::vector<double> warm = {1, 1};
  MipOptions mo;
  mo.time_limit_s = 0;  // no search: the warm start must come back as-is
  MipResult r = solve_mip(lp, mask, &warm, mo);
  CHECK(r.status == MipStatus::Feasible);
  CHECK(r.objective == doctest::Approx(2));
  CHECK(r.bound == -kInf);

  mo.time_limit_s = 10;
  r = solve_mip(lp, mask, &warm, mo);
  CHECK(r.status == MipStatus::Optimal);
  CHECK(r.objective == doctest::Approx(1));

  std::vector<double> bad1 = {0.5, 1};  // fractional
  CHECK_THROWS_WITH_AS(solve_mip(lp, mask, &bad1, mo), doctest::Contains("not integral"), std::invalid_argument);
  std::vector<double> bad2 = {0, 0};  // violates the row
  CHECK_THROWS_WITH_AS(solve_mip(lp, mask, &bad2, mo), doctest::Contains("violates"), std::invalid_argument);
}

TEST_CASE("mip proves integer infeasibility with a fractionally feasible relaxation") {
  LinearProgram lp;  // x + y = 1.5 has no 0/1 solution
  lp.add_row(RowSense::EQ, 1.5);
  lp.add_col(0, 1, 1, {{0, 1}});
  lp.add_col(0, 1, 1, {{0, 1}});
  MipResult r = solve_mip(lp, {1, 1});
  CHECK(r.status == MipStatus::Infeasible);
  CHECK(r.bound == kInf);
}

TEST_CASE("integral-objective pruning keeps correctness") {
  // min x + y + z, each in {0,1}, pairwise-sum rows force at least 2 ones
  LinearProgram lp;
  lp.add_row(RowSense::GE, 1);
  lp.add_row(RowSense::GE, 1);
  lp.add_row(RowSense::GE, 1);
  lp.add_col(0, 1, 1, {{0, 1}, {1, 1}});
  lp.add_col(0, 1, 1, {{0, 1}, {2, 1}});
  lp.add_col(0, 1, 1, {{1, 1}, {2, 1}});
  MipOptions mo;
  mo.objective_integral = true;
  MipResult r = solve_mip(lp, {1, 1, 1}, nullptr, mo);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.objective == doctest::Approx(2));
}

TEST_CASE("lp text export contains objective, rows, bounds and integers") {
  LinearProgram lp;
  lp.add_row(RowSense::LE, 4, "cap");
  lp.add_col(0, 1, 3, {{0, 2}}, "open");
  lp.add_col(0, kInf, -1, {{0, 1}});
  std::ostringstream out;
  write_lp_text(lp, out, {1, 0}, "demo");
  const std::string s = out.str();
  CHECK(s.find("Minimize") != std::string::npos);
  CHECK(s.find("3 open") != std::string::npos);
  CHECK(s.find("cap:") != std::string::npos);
  CHECK(s.find("<= 4") != std::string::npos);
  CHECK(s.find("0 <= open <= 1") != std::string::npos);
  CHECK(s.find("General") != std::string::npos);
  CHECK(s.find("End") != std::string::npos);
}
