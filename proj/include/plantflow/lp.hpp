#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace plantflow::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

/// sum(terms) == rhs
struct Constraint {
  std::vector<Term> terms;
  double rhs = 0.0;
};

struct Bounds {
  double lower = 0.0;
  double upper = kInfinity;
};

/// maximise objective . x  subject to  equalities,  lower <= x <= upper.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> equalities;
  std::vector<Bounds> bounds;
};

enum class LpStatus { optimal, infeasible, unbounded };
std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective_value = 0.0;
  std::vector<double> primal;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  /// Feasibility and optimality tolerance.
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule;
  /// 0 selects 3 * num_vars.
  std::size_t stall_threshold = 0;
  /// 0 selects a limit proportional to the tableau size.
  std::size_t max_iterations = 0;
};

/// Throws StructuralError for dimension mismatches, out-of-range term
/// indices, negative or non-finite lower bounds and lower > upper.
void check_structure(const LinearProgram& lp);

/// Bounded-variable primal simplex on a dense tableau, double precision.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

/// Largest problem solve_lp_exact accepts.
inline constexpr std::size_t kExactMaxVars = 12;

/// Two-phase standard-form simplex in exact rational arithmetic with
/// Bland's rule throughout. Independent of solve_lp; meant as a reference
/// for small instances (at most kExactMaxVars variables, StructuralError
/// otherwise). Coefficients are converted from double exactly.
LpSolution solve_lp_exact(const LinearProgram& lp);

/// max_i |row_i . x - rhs_i|
double max_equality_residual(const LinearProgram& lp, const std::vector<double>& x);
/// Largest amount by which x leaves its box (0 when inside).
double max_bound_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace plantflow::lp
