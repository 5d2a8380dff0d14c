#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "scheloc/lp.hpp"

namespace scheloc::lps {

namespace {

// Bounded-variable primal simplex, two phases, dense explicit basis inverse.
//
// Extended column order: structural | slacks (one per <=/>= row) |
// artificials (one per row). Phase 1 minimises the artificial sum from the
// all-artificial-feasible start (slack made basic instead where the initial
// residual allows); phase 2 pins artificials to [0,0] and optimises the real
// objective. The dense m x m inverse is updated per pivot and rebuilt
// periodically, which is perfectly adequate for the model sizes here (a few
// hundred to a few thousand rows).
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {}

  LpResult run() {
    build();
    init_basis();

    LpResult res;
    res.x.assign(nv_, 0.0);
    res.duals.assign(m_, 0.0);
    res.reduced_costs.assign(nv_, 0.0);
    res.var_status.assign(nv_, VarStatus::AtLower);

    // phase 1
    double max_b = 0;
    for (double b : lp_.rhs) max_b = std::max(max_b, std::abs(b));
    const double feas_tol = 1e-6 * (1.0 + max_b);

    const Step s1 = optimize(cost1_);
    res.iterations = iterations_;
    if (s1 == Step::IterationLimit) {
      res.status = LpStatus::IterationLimit;
      return res;
    }
    if (current_objective(cost1_) > feas_tol) {
      res.status = LpStatus::Infeasible;
      finish(res, true);
      return res;
    }

    // phase 2: artificials are fixed to zero and can never re-enter
    for (int a = art0_; a < ncol_; ++a) {
      lob_[a] = 0.0;
      upb_[a] = 0.0;
      if (state_[a] != VarStatus::Basic) xval_[a] = 0.0;
    }
    const Step s2 = optimize(cost2_);
    res.iterations = iterations_;
    switch (s2) {
      case Step::PhaseOptimal: res.status = LpStatus::Optimal; break;
      case Step::Unbounded: res.status = LpStatus::Unbounded; break;
      case Step::IterationLimit: res.status = LpStatus::IterationLimit; break;
    }
    finish(res, false);
    if (opt_.audit) opt_.audit->record_lp(lp_, res);
    return res;
  }

 private:
  enum class Step { PhaseOptimal, Unbounded, IterationLimit };

  void build() {
    m_ = lp_.num_rows();
    nv_ = lp_.num_cols();

    cbeg_ = {0};
    auto push_col = [&](double l, double h) {
      cbeg_.push_back(static_cast<int>(crow_.size()));
      lob_.push_back(l);
      upb_.push_back(h);
    };

    for (int j = 0; j < nv_; ++j) {
      if (std::isinf(lp_.lo[j]) && std::isinf(lp_.hi[j])) throw std::logic_error("lp: free variables are not supported");
      for (int t = lp_.col_begin[j]; t < lp_.col_begin[j + 1]; ++t) {
        crow_.push_back(lp_.row_index[t]);
        cval_.push_back(lp_.value[t]);
      }
      push_col(lp_.lo[j], lp_.hi[j]);
    }

    sl0_ = nv_;
    slack_row_.clear();
    for (int i = 0; i < m_; ++i) {
      if (lp_.sense[i] == RowSense::EQ) continue;
      crow_.push_back(i);
      cval_.push_back(lp_.sense[i] == RowSense::LE ? 1.0 : -1.0);
      push_col(0.0, kInf);
      slack_row_.push_back(i);
    }

    art0_ = static_cast<int>(lob_.size());
    for (int i = 0; i < m_; ++i) {
      crow_.push_back(i);
      cval_.push_back(1.0);  // sign fixed in init_basis before anything pivots
      push_col(0.0, kInf);
    }
    ncol_ = static_cast<int>(lob_.size());

    const double sgn = lp_.maximize ? -1.0 : 1.0;
    cost1_.assign(ncol_, 0.0);
    cost2_.assign(ncol_, 0.0);
    for (int a = art0_; a < ncol_; ++a) cost1_[a] = 1.0;
    for (int j = 0; j < nv_; ++j) cost2_[j] = sgn * lp_.obj[j];
  }

  void init_basis() {
    state_.assign(ncol_, VarStatus::AtLower);
    xval_.assign(ncol_, 0.0);
    for (int j = 0; j < ncol_; ++j) {
      if (std::isfinite(lob_[j])) {
        state_[j] = VarStatus::AtLower;
        xval_[j] = lob_[j];
      } else {
        state_[j] = VarStatus::AtUpper;
        xval_[j] = upb_[j];
      }
    }

    std::vector<double> res(lp_.rhs);
    for (int j = 0; j < ncol_; ++j) {
      if (xval_[j] == 0.0) continue;
      for (int t = cbeg_[j]; t < cbeg_[j + 1]; ++t) res[crow_[t]] -= cval_[t] * xval_[j];
    }

    basic_.assign(m_, -1);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    xb_.assign(m_, 0.0);

    // map row -> slack column
    std::vector<int> slack_of(m_, -1);
    for (std::size_t s = 0; s < slack_row_.size(); ++s) slack_of[slack_row_[s]] = sl0_ + static_cast<int>(s);

    for (int i = 0; i < m_; ++i) {
      const int s = slack_of[i];
      const bool slack_ok = s >= 0 && ((lp_.sense[i] == RowSense::LE && res[i] >= 0.0) ||
                                       (lp_.sense[i] == RowSense::GE && res[i] <= 0.0));
      if (slack_ok) {
        const double coef = lp_.sense[i] == RowSense::LE ? 1.0 : -1.0;
        basic_[i] = s;
        xb_[i] = res[i] / coef;
        binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0 / coef;
        // the paired artificial stays nonbasic at 0 and is never needed
        const int a = art0_ + i;
        lob_[a] = upb_[a] = 0.0;
      } else {
        const int a = art0_ + i;
        const double coef = res[i] >= 0.0 ? 1.0 : -1.0;
        cval_[cbeg_[a]] = coef;
        basic_[i] = a;
        xb_[i] = std::abs(res[i]);
        binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0 / coef;
      }
      state_[basic_[i]] = VarStatus::Basic;
    }
  }

  double current_objective(const std::vector<double>& cost) const {
    double obj = 0;
    for (int i = 0; i < m_; ++i) obj += cost[basic_[i]] * xb_[i];
    for (int j = 0; j < ncol_; ++j)
      if (state_[j] != VarStatus::Basic && xval_[j] != 0.0) obj += cost[j] * xval_[j];
    return obj;
  }

  void price(const std::vector<double>& cost) {
    y_.assign(m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const double c = cost[basic_[r]];
      if (c == 0.0) continue;
      const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
      for (int i = 0; i < m_; ++i) y_[i] += c * row[i];
    }
  }

  double reduced_cost(int j, const std::vector<double>& cost) const {
    double rc = cost[j];
    for (int t = cbeg_[j]; t < cbeg_[j + 1]; ++t) rc -= y_[crow_[t]] * cval_[t];
    return rc;
  }

  void ftran(int j) {
    d_.assign(m_, 0.0);
    for (int t = cbeg_[j]; t < cbeg_[j + 1]; ++t) {
      const int i = crow_[t];
      const double v = cval_[t];
      for (int r = 0; r < m_; ++r) d_[r] += binv_[static_cast<std::size_t>(r) * m_ + i] * v;
    }
  }

  void refactor() {
    // rebuild binv by Gauss-Jordan with partial pivoting on the basis matrix
    std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int r = 0; r < m_; ++r) {
      const int j = basic_[r];
      for (int t = cbeg_[j]; t < cbeg_[j + 1]; ++t) a[static_cast<std::size_t>(crow_[t]) * m_ + r] = cval_[t];
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[static_cast<std::size_t>(i) * m_ + i] = 1.0;

    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 1e-11;
      for (int r = c; r < m_; ++r) {
        const double v = std::abs(a[static_cast<std::size_t>(r) * m_ + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv < 0) throw std::runtime_error("lp: basis matrix became singular");
      if (piv != c) {
        for (int t = 0; t < m_; ++t) {
          std::swap(a[static_cast<std::size_t>(piv) * m_ + t], a[static_cast<std::size_t>(c) * m_ + t]);
          std::swap(inv[static_cast<std::size_t>(piv) * m_ + t], inv[static_cast<std::size_t>(c) * m_ + t]);
        }
      }
      const double pv = a[static_cast<std::size_t>(c) * m_ + c];
      for (int t = 0; t < m_; ++t) {
        a[static_cast<std::size_t>(c) * m_ + t] /= pv;
        inv[static_cast<std::size_t>(c) * m_ + t] /= pv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = a[static_cast<std::size_t>(r) * m_ + c];
        if (f == 0.0) continue;
        for (int t = 0; t < m_; ++t) {
          a[static_cast<std::size_t>(r) * m_ + t] -= f * a[static_cast<std::size_t>(c) * m_ + t];
          inv[static_cast<std::size_t>(r) * m_ + t] -= f * inv[static_cast<std::size_t>(c) * m_ + t];
        }
      }
    }
    binv_ = std::move(inv);
    recompute_xb();
  }

  void recompute_xb() {
    std::vector<double> res(lp_.rhs);
    for (int j = 0; j < ncol_; ++j) {
      if (state_[j] == VarStatus::Basic || xval_[j] == 0.0) continue;
      for (int t = cbeg_[j]; t < cbeg_[j + 1]; ++t) res[crow_[t]] -= cval_[t] * xval_[j];
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0;
      const double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
      for (int i = 0; i < m_; ++i) v += row[i] * res[i];
      xb_[r] = v;
    }
  }

  Step optimize(const std::vector<double>& cost) {
    const std::int64_t limit =
        opt_.max_iterations > 0 ? opt_.max_iterations : 5000 + 100LL * m_ + 10LL * ncol_;
    const int stall_limit = 2 * m_ + 200;

    bool bland = false;
    int stall = 0;
    double best_obj = current_objective(cost);
    int since_refactor = 0;

    for (;;) {
      if (++iterations_ > limit) return Step::IterationLimit;

      price(cost);

      int enter = -1;
      double worst = -opt_.tol_dual;
      for (int j = 0; j < ncol_; ++j) {
        if (state_[j] == VarStatus::Basic) continue;
        if (lob_[j] == upb_[j]) continue;  // fixed, never prices in
        const double rc = reduced_cost(j, cost);
        double viol = 0.0;
        if (state_[j] == VarStatus::AtLower && rc < -opt_.tol_dual) viol = rc;
        if (state_[j] == VarStatus::AtUpper && rc > opt_.tol_dual) viol = -rc;
        if (viol < 0.0) {
          if (bland) {
            enter = j;
            break;
          }
          if (viol < worst) {
            worst = viol;
            enter = j;
          }
        }
      }
      if (enter < 0) return Step::PhaseOptimal;

      const double sgn = state_[enter] == VarStatus::AtLower ? 1.0 : -1.0;
      ftran(enter);

      // ratio test: how far can x[enter] move before a basic variable or its
      // own opposite bound blocks
      double t_max = kInf;
      int leave_row = -1;
      double leave_quality = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double delta = -sgn * d_[r];
        if (std::abs(delta) <= opt_.tol_pivot) continue;
        const int v = basic_[r];
        double lim = kInf;
        if (delta > 0.0 && std::isfinite(upb_[v])) lim = (upb_[v] - xb_[r]) / delta;
        if (delta < 0.0 && std::isfinite(lob_[v])) lim = (lob_[v] - xb_[r]) / delta;
        if (lim == kInf) continue;
        lim = std::max(lim, 0.0);
        bool take;
        if (leave_row < 0)
          take = true;
        else if (lim < t_max - 1e-12)
          take = true;
        else if (lim <= t_max + 1e-12)
          take = bland ? v < basic_[leave_row] : std::abs(delta) > leave_quality;
        else
          take = false;
        if (take) {
          t_max = std::min(t_max, lim);
          leave_row = r;
          leave_quality = std::abs(delta);
        }
      }
      const double flip = std::isfinite(lob_[enter]) && std::isfinite(upb_[enter]) ? upb_[enter] - lob_[enter] : kInf;

      if (leave_row < 0 && flip == kInf) return Step::Unbounded;

      if (flip < t_max) {
        // bound flip: no basis change
        for (int r = 0; r < m_; ++r) xb_[r] -= sgn * d_[r] * flip;
        state_[enter] = state_[enter] == VarStatus::AtLower ? VarStatus::AtUpper : VarStatus::AtLower;
        xval_[enter] = state_[enter] == VarStatus::AtLower ? lob_[enter] : upb_[enter];
      } else {
        const double t = t_max;
        for (int r = 0; r < m_; ++r) xb_[r] -= sgn * d_[r] * t;

        const int leave = basic_[leave_row];
        const double delta = -sgn * d_[leave_row];
        state_[leave] = delta > 0.0 ? VarStatus::AtUpper : VarStatus::AtLower;
        xval_[leave] = delta > 0.0 ? upb_[leave] : lob_[leave];  // snap exactly to the bound

        basic_[leave_row] = enter;
        state_[enter] = VarStatus::Basic;
        xb_[leave_row] = sgn > 0.0 ? lob_[enter] + t : upb_[enter] - t;

        // product-form update of the inverse
        const double piv = d_[leave_row];
        double* prow = binv_.data() + static_cast<std::size_t>(leave_row) * m_;
        for (int i = 0; i < m_; ++i) prow[i] /= piv;
        for (int r = 0; r < m_; ++r) {
          if (r == leave_row) continue;
          const double f = d_[r];
          if (f == 0.0) continue;
          double* row = binv_.data() + static_cast<std::size_t>(r) * m_;
          for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
        }

        if (++since_refactor >= opt_.refactor_every) {
          refactor();
          since_refactor = 0;
        }
      }

      const double obj = current_objective(cost);
      if (obj < best_obj - 1e-10 * (1.0 + std::abs(best_obj))) {
        best_obj = obj;
        stall = 0;
        bland = false;
      } else if (++stall > stall_limit) {
        bland = true;  // Bland's rule guarantees escape from degenerate cycles
      }
    }
  }

  void finish(LpResult& res, bool infeasible) {
    const double sgn = lp_.maximize ? -1.0 : 1.0;

    std::vector<int> row_of(ncol_, -1);
    for (int r = 0; r < m_; ++r) row_of[basic_[r]] = r;

    for (int j = 0; j < nv_; ++j) {
      res.var_status[j] = state_[j];
      res.x[j] = state_[j] == VarStatus::Basic ? xb_[row_of[j]] : xval_[j];
    }
    if (res.status == LpStatus::Unbounded) {
      res.objective = lp_.maximize ? kInf : -kInf;
      return;
    }
    if (infeasible) return;

    double obj = 0;
    for (int j = 0; j < nv_; ++j) obj += cost2_[j] * res.x[j];
    res.objective = sgn * obj;

    price(cost2_);
    double dual = 0;
    for (int i = 0; i < m_; ++i) {
      res.duals[i] = sgn * y_[i];
      dual += y_[i] * lp_.rhs[i];
    }
    for (int j = 0; j < nv_; ++j) {
      const double rc = reduced_cost(j, cost2_);
      res.reduced_costs[j] = sgn * rc;
      if (state_[j] != VarStatus::Basic && xval_[j] != 0.0) dual += rc * xval_[j];
    }
    // slack/artificial nonbasic values are all 0, so they add nothing
    res.dual_objective = sgn * dual;
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;

  int m_ = 0, nv_ = 0, sl0_ = 0, art0_ = 0, ncol_ = 0;
  std::vector<int> cbeg_, crow_;
  std::vector<double> cval_;
  std::vector<double> lob_, upb_;
  std::vector<double> cost1_, cost2_;
  std::vector<int> slack_row_;

  std::vector<int> basic_;
  std::vector<VarStatus> state_;
  std::vector<double> xval_, xb_, binv_, y_, d_;
  std::int64_t iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& opt) { return Simplex(lp, opt).run(); }

}  // namespace scheloc::lps
