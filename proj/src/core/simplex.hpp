#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cfrac {

enum class Relation { less_equal, equal, greater_equal };

enum class LpStatus { optimal, infeasible, unbounded, numerical_failure };

const char* to_string(LpStatus s);

enum class LpMethod {
  automatic,      // revised when the problem is pure <= with rhs >= 0, else dense
  dense_tableau,  // two-phase full tableau; handles all three relations
  revised,        // product-form revised simplex; pure <= with rhs >= 0 only
};

struct LpOptions {
  LpMethod method = LpMethod::automatic;
  std::int64_t max_iterations = 500000;
  double cost_tol = 1e-9;
  double pivot_tol = 1e-9;
  double feas_tol = 1e-9;
};

/// Maximization program over nonnegative variables with sparse constraint
/// rows; each row has one of the three relations against its right-hand side.
class LinearProgram {
 public:
  struct Row {
    std::vector<std::pair<std::uint32_t, double>> entries;
    Relation rel = Relation::less_equal;
    double rhs = 0.0;
  };

  explicit LinearProgram(std::size_t num_vars);

  void set_objective(std::size_t var, double coeff);
  void add_row(std::vector<std::pair<std::uint32_t, double>> entries, Relation rel, double rhs);

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

struct LpSolution {
  LpStatus status = LpStatus::numerical_failure;
  double objective = 0.0;
  std::vector<double> x;
  std::int64_t iterations = 0;
  double residual = 0.0;  // max primal constraint violation at x
};

/// Solves the program with a self-contained simplex method (Dantzig pricing
/// with a Bland's-rule fallback against cycling). Returns an optimal basic
/// solution for feasible bounded problems.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opts = {});

}  // namespace cfrac
