#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cfrac {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars) : objective_(num_vars, 0.0) {}

void LinearProgram::set_objective(std::size_t var, double coeff) {
  if (var >= objective_.size()) throw InvalidArgumentError("objective variable out of range");
  if (!std::isfinite(coeff)) throw InvalidArgumentError("objective coefficient must be finite");
  objective_[var] = coeff;
}

void LinearProgram::add_row(std::vector<std::pair<std::uint32_t, double>> entries, Relation rel,
                            double rhs) {
  if (!std::isfinite(rhs)) throw InvalidArgumentError("row rhs must be finite");
  for (const auto& [var, coeff] : entries) {
    if (var >= objective_.size()) throw InvalidArgumentError("row variable out of range");
    if (!std::isfinite(coeff)) throw InvalidArgumentError("row coefficient must be finite");
  }
  rows_.push_back(Row{std::move(entries), rel, rhs});
}

namespace {

constexpr double kStallStep = 1e-13;
constexpr int kStallLimit = 100;

double solution_residual(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const auto& row : lp.rows()) {
    double lhs = 0.0;
    for (const auto& [var, coeff] : row.entries) lhs += coeff * x[var];
    double violation = 0.0;
    switch (row.rel) {
      case Relation::less_equal: violation = lhs - row.rhs; break;
      case Relation::greater_equal: violation = row.rhs - lhs; break;
      case Relation::equal: violation = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

LpSolution finish(const LinearProgram& lp, std::vector<double> x, std::int64_t iterations) {
  LpSolution sol;
  for (double& v : x) {
    if (v < 0) v = 0.0;  // clamp roundoff-sized negatives
  }
  sol.x = std::move(x);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) sol.objective += lp.objective()[j] * sol.x[j];
  sol.iterations = iterations;
  sol.residual = solution_residual(lp, sol.x);
  sol.status = sol.residual <= 1e-6 ? LpStatus::optimal : LpStatus::numerical_failure;
  return sol;
}

// ---------------------------------------------------------------------------
// Dense two-phase tableau.
// ---------------------------------------------------------------------------

class DenseTableau {
 public:
  DenseTableau(const LinearProgram& lp, const LpOptions& opts) : lp_(lp), opts_(opts) {}

  LpSolution solve() {
    build();
    if (!artificial_rows_.empty()) {
      if (!run_phase(/*phase_one=*/true)) return failed_;
      double infeas = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (is_artificial_[basis_[i]]) infeas += rhs(i);
      }
      if (infeas > 1e-7) {
        LpSolution sol;
        sol.status = LpStatus::infeasible;
        sol.iterations = iterations_;
        return sol;
      }
      drive_out_artificials();
    }
    if (!run_phase(/*phase_one=*/false)) return failed_;
    std::vector<double> x(lp_.num_vars(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < lp_.num_vars()) x[basis_[i]] = rhs(i);
    }
    LpSolution sol = finish(lp_, std::move(x), iterations_);
    if (unbounded_) sol.status = LpStatus::unbounded;
    return sol;
  }

 private:
  double& at(std::size_t row, std::size_t col) { return tab_[row * width_ + col]; }
  double rhs(std::size_t row) { return tab_[row * width_ + width_ - 1]; }

  void build() {
    m_ = lp_.num_rows();
    const std::size_t n = lp_.num_vars();

    // Column layout: structural, then one slack/surplus per inequality row,
    // then one artificial per >= or = row (after rhs sign normalization).
    std::size_t cols = n;
    std::vector<std::size_t> extra_col(m_, SIZE_MAX);
    std::vector<Relation> rel(m_);
    std::vector<double> rhs_norm(m_);
    std::vector<double> sign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp_.rows()[i];
      rel[i] = row.rel;
      rhs_norm[i] = row.rhs;
      if (row.rhs < 0) {
        sign[i] = -1.0;
        rhs_norm[i] = -row.rhs;
        if (row.rel == Relation::less_equal) rel[i] = Relation::greater_equal;
        else if (row.rel == Relation::greater_equal) rel[i] = Relation::less_equal;
      }
      if (rel[i] != Relation::equal) extra_col[i] = cols++;
    }
    std::vector<std::size_t> art_col(m_, SIZE_MAX);
    for (std::size_t i = 0; i < m_; ++i) {
      if (rel[i] != Relation::less_equal) {
        art_col[i] = cols++;
        artificial_rows_.push_back(i);
      }
    }
    total_cols_ = cols;
    width_ = cols + 1;
    tab_.assign(m_ * width_, 0.0);
    is_artificial_.assign(cols, 0);
    in_basis_.assign(cols, 0);
    basis_.resize(m_);

    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp_.rows()[i];
      for (const auto& [var, coeff] : row.entries) at(i, var) += sign[i] * coeff;
      if (rel[i] == Relation::less_equal) at(i, extra_col[i]) = 1.0;
      else if (rel[i] == Relation::greater_equal) at(i, extra_col[i]) = -1.0;
      at(i, width_ - 1) = rhs_norm[i];
      if (art_col[i] != SIZE_MAX) {
        at(i, art_col[i]) = 1.0;
        is_artificial_[art_col[i]] = 1;
        basis_[i] = art_col[i];
      } else {
        basis_[i] = extra_col[i];
      }
      in_basis_[basis_[i]] = 1;
    }

    // Reduced-cost rows; entering columns are those with positive entries.
    cost2_.assign(width_, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost2_[j] = lp_.objective()[j];
    cost1_.assign(width_, 0.0);
    for (std::size_t i : artificial_rows_) {
      for (std::size_t j = 0; j < width_; ++j) cost1_[j] += tab_[i * width_ + j];
    }
    for (std::size_t j = 0; j < total_cols_; ++j) {
      if (is_artificial_[j]) cost1_[j] = 0.0;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    const double p = at(r, q);
    double* prow = tab_.data() + r * width_;
    const double inv = 1.0 / p;
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double e = at(i, q);
      if (e == 0.0) continue;
      double* row = tab_.data() + i * width_;
      for (std::size_t j = 0; j < width_; ++j) row[j] -= e * prow[j];
      row[q] = 0.0;
      if (row[width_ - 1] < 0 && row[width_ - 1] > -1e-11) row[width_ - 1] = 0.0;
    }
    for (double* cost : {cost1_.data(), cost2_.data()}) {
      const double e = cost[q];
      if (e == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost[j] -= e * prow[j];
      cost[q] = 0.0;
    }
    in_basis_[basis_[r]] = 0;
    basis_[r] = q;
    in_basis_[q] = 1;
  }

  bool allowed(std::size_t j, bool phase_one) const {
    if (in_basis_[j]) return false;
    if (is_artificial_[j]) return false;  // only ever basic from the start
    (void)phase_one;
    return true;
  }

  // Returns false on iteration limit; sets unbounded_ when no ratio row
  // exists in phase two.
  bool run_phase(bool phase_one) {
    std::vector<double>& cost = phase_one ? cost1_ : cost2_;
    int stall = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= opts_.max_iterations) {
        failed_.status = LpStatus::numerical_failure;
        failed_.iterations = iterations_;
        return false;
      }
      std::size_t q = SIZE_MAX;
      if (bland) {
        for (std::size_t j = 0; j < total_cols_; ++j) {
          if (allowed(j, phase_one) && cost[j] > opts_.cost_tol) { q = j; break; }
        }
      } else {
        double best = opts_.cost_tol;
        for (std::size_t j = 0; j < total_cols_; ++j) {
          if (allowed(j, phase_one) && cost[j] > best) { best = cost[j]; q = j; }
        }
      }
      if (q == SIZE_MAX) return true;  // phase optimal

      std::size_t r = SIZE_MAX;
      double best_t = std::numeric_limits<double>::infinity();
      double best_p = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double w = at(i, q);
        if (w <= opts_.pivot_tol) continue;
        const double t = rhs(i) / w;
        bool take = false;
        if (r == SIZE_MAX || t < best_t - 1e-12) {
          take = true;
        } else if (t <= best_t + 1e-12) {
          take = bland ? basis_[i] < basis_[r] : w > best_p;
        }
        if (take) {
          r = i;
          best_t = std::min(best_t, t);
          best_p = w;
        }
      }
      if (r == SIZE_MAX) {
        if (phase_one) {
          failed_.status = LpStatus::numerical_failure;
          failed_.iterations = iterations_;
          return false;
        }
        unbounded_ = true;
        return true;
      }
      pivot(r, q);
      ++iterations_;
      stall = (best_t <= kStallStep) ? stall + 1 : 0;
      if (stall > kStallLimit) bland = true;
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial_[basis_[i]]) continue;
      for (std::size_t j = 0; j < total_cols_; ++j) {
        if (is_artificial_[j] || in_basis_[j]) continue;
        if (std::abs(at(i, j)) > opts_.pivot_tol) {
          pivot(i, j);
          break;
        }
      }
      // No pivot found: the row is linearly dependent; the artificial stays
      // basic at zero and never moves (all its allowed entries are zero).
    }
  }

  const LinearProgram& lp_;
  const LpOptions& opts_;
  std::size_t m_ = 0;
  std::size_t total_cols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> tab_;
  std::vector<double> cost1_, cost2_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  std::vector<char> is_artificial_;
  std::vector<std::size_t> artificial_rows_;
  std::int64_t iterations_ = 0;
  bool unbounded_ = false;
  LpSolution failed_;
};

// ---------------------------------------------------------------------------
// Revised simplex with an explicit basis inverse; pure <= rows, rhs >= 0, so
// the slack basis is feasible from the start and no phase one is needed.
// ---------------------------------------------------------------------------

class RevisedSimplex {
 public:
  RevisedSimplex(const LinearProgram& lp, const LpOptions& opts) : lp_(lp), opts_(opts) {}

  LpSolution solve() {
    build();
    int stall = 0;
    bool bland = false;
    std::int64_t since_refactor = 0;
    while (true) {
      if (iterations_ >= opts_.max_iterations) return fail();
      compute_dual();
      const std::size_t q = price(bland);
      if (q == SIZE_MAX) break;  // optimal

      column_into(q, w_);
      std::size_t r = SIZE_MAX;
      double best_t = std::numeric_limits<double>::infinity();
      double best_p = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (w_[i] <= opts_.pivot_tol) continue;
        const double t = std::max(xb_[i], 0.0) / w_[i];
        bool take = false;
        if (r == SIZE_MAX || t < best_t - 1e-12) {
          take = true;
        } else if (t <= best_t + 1e-12) {
          take = bland ? basis_[i] < basis_[r] : w_[i] > best_p;
        }
        if (take) {
          r = i;
          best_t = std::min(best_t, t);
          best_p = w_[i];
        }
      }
      if (r == SIZE_MAX) {
        LpSolution sol;
        sol.status = LpStatus::unbounded;
        sol.iterations = iterations_;
        return sol;
      }

      // Update basis inverse and basic values (product form).
      const double t = std::max(xb_[r], 0.0) / w_[r];
      for (std::size_t i = 0; i < m_; ++i) {
        if (i != r) xb_[i] -= t * w_[i];
        if (xb_[i] < 0 && xb_[i] > -1e-11) xb_[i] = 0.0;
      }
      xb_[r] = t;
      double* brow = binv_.data() + r * m_;
      const double inv = 1.0 / w_[r];
      for (std::size_t k = 0; k < m_; ++k) brow[k] *= inv;
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == r || w_[i] == 0.0) continue;
        double* row = binv_.data() + i * m_;
        const double e = w_[i];
        for (std::size_t k = 0; k < m_; ++k) row[k] -= e * brow[k];
      }
      in_basis_[basis_[r]] = 0;
      basis_[r] = q;
      in_basis_[q] = 1;

      ++iterations_;
      stall = (best_t <= kStallStep) ? stall + 1 : 0;
      if (stall > kStallLimit) bland = true;
      if (++since_refactor >= 128) {
        if (!refactor()) return fail();
        since_refactor = 0;
      }
    }
    if (!refactor()) return fail();
    std::vector<double> x(lp_.num_vars(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < lp_.num_vars()) x[basis_[i]] = xb_[i];
    }
    return finish(lp_, std::move(x), iterations_);
  }

 private:
  LpSolution fail() {
    LpSolution sol;
    sol.status = LpStatus::numerical_failure;
    sol.iterations = iterations_;
    return sol;
  }

  void build() {
    m_ = lp_.num_rows();
    const std::size_t n = lp_.num_vars();
    b_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) b_[i] = lp_.rows()[i].rhs;

    // Column-major copy of the structural matrix.
    col_ptr_.assign(n + 1, 0);
    std::size_t nnz = 0;
    for (const auto& row : lp_.rows()) nnz += row.entries.size();
    col_rows_.resize(nnz);
    col_vals_.resize(nnz);
    for (const auto& row : lp_.rows()) {
      for (const auto& [var, coeff] : row.entries) ++col_ptr_[var + 1];
    }
    for (std::size_t j = 0; j < n; ++j) col_ptr_[j + 1] += col_ptr_[j];
    std::vector<std::size_t> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& [var, coeff] : lp_.rows()[i].entries) {
        col_rows_[cursor[var]] = static_cast<std::uint32_t>(i);
        col_vals_[cursor[var]] = coeff;
        ++cursor[var];
      }
    }

    basis_.resize(m_);
    in_basis_.assign(n + m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      basis_[i] = n + i;  // slack
      in_basis_[n + i] = 1;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    xb_ = b_;
    y_.resize(m_);
    w_.resize(m_);
  }

  void compute_dual() {
    std::fill(y_.begin(), y_.end(), 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= lp_.num_vars()) continue;  // slack cost 0
      const double cb = lp_.objective()[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = binv_.data() + i * m_;
      for (std::size_t k = 0; k < m_; ++k) y_[k] += cb * row[k];
    }
  }

  // Dantzig (or Bland) pricing over structural columns and slacks.
  std::size_t price(bool bland) const {
    const std::size_t n = lp_.num_vars();
    std::size_t best_j = SIZE_MAX;
    double best = opts_.cost_tol;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_basis_[j]) continue;
      double rc = lp_.objective()[j];
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        rc -= y_[col_rows_[k]] * col_vals_[k];
      }
      if (rc > best) {
        best = rc;
        best_j = j;
        if (bland) return best_j;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (in_basis_[n + i]) continue;
      const double rc = -y_[i];
      if (rc > best) {
        best = rc;
        best_j = n + i;
        if (bland) return best_j;
      }
    }
    return best_j;
  }

  void column_into(std::size_t j, std::vector<double>& out) const {
    const std::size_t n = lp_.num_vars();
    std::fill(out.begin(), out.end(), 0.0);
    if (j >= n) {
      const std::size_t r = j - n;
      for (std::size_t i = 0; i < m_; ++i) out[i] = binv_[i * m_ + r];
      return;
    }
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      const std::uint32_t r = col_rows_[k];
      const double v = col_vals_[k];
      for (std::size_t i = 0; i < m_; ++i) out[i] += binv_[i * m_ + r] * v;
    }
  }

  // Rebuilds the inverse from the basis columns (Gauss-Jordan with partial
  // pivoting) and recomputes the basic values; keeps drift in check.
  bool refactor() {
    const std::size_t n = lp_.num_vars();
    std::vector<double> mat(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = basis_[i];
      if (j >= n) {
        mat[(j - n) * m_ + i] = 1.0;
      } else {
        for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
          mat[col_rows_[k] * m_ + i] = col_vals_[k];
        }
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::abs(mat[col * m_ + col]);
      for (std::size_t i = col + 1; i < m_; ++i) {
        const double v = std::abs(mat[i * m_ + col]);
        if (v > best) { best = v; piv = i; }
      }
      if (best < 1e-12) return false;
      if (piv != col) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(mat[piv * m_ + k], mat[col * m_ + k]);
          std::swap(inv[piv * m_ + k], inv[col * m_ + k]);
        }
      }
      const double p = 1.0 / mat[col * m_ + col];
      for (std::size_t k = 0; k < m_; ++k) {
        mat[col * m_ + k] *= p;
        inv[col * m_ + k] *= p;
      }
      for (std::size_t i = 0; i < m_; ++i) {
        if (i == col) continue;
        const double e = mat[i * m_ + col];
        if (e == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          mat[i * m_ + k] -= e * mat[col * m_ + k];
          inv[i * m_ + k] -= e * inv[col * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t i = 0; i < m_; ++i) {
      double v = 0.0;
      const double* row = binv_.data() + i * m_;
      for (std::size_t k = 0; k < m_; ++k) v += row[k] * b_[k];
      xb_[i] = v < 0 && v > -1e-11 ? 0.0 : v;
    }
    return true;
  }

  const LinearProgram& lp_;
  const LpOptions& opts_;
  std::size_t m_ = 0;
  std::vector<double> b_;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> col_rows_;
  std::vector<double> col_vals_;
  std::vector<std::size_t> basis_;
  std::vector<char> in_basis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::vector<double> y_;
  std::vector<double> w_;
  std::int64_t iterations_ = 0;
};

bool revised_applicable(const LinearProgram& lp) {
  for (const auto& row : lp.rows()) {
    if (row.rel != Relation::less_equal || row.rhs < 0) return false;
  }
  return true;
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts) {
  if (lp.num_rows() == 0) {
    LpSolution sol;
    sol.x.assign(lp.num_vars(), 0.0);
    const bool improvable =
        std::any_of(lp.objective().begin(), lp.objective().end(),
                    [&](double c) { return c > opts.cost_tol; });
    sol.status = improvable ? LpStatus::unbounded : LpStatus::optimal;
    return sol;
  }
  LpMethod method = opts.method;
  if (method == LpMethod::automatic) {
    method = revised_applicable(lp) ? LpMethod::revised : LpMethod::dense_tableau;
  }
  if (method == LpMethod::revised) {
    if (!revised_applicable(lp)) {
      throw InvalidArgumentError("revised method needs pure <= rows with nonnegative rhs");
    }
    return RevisedSimplex(lp, opts).solve();
  }
  return DenseTableau(lp, opts).solve();
}

}  // namespace cfrac
