#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "plantflow/errors.hpp"
#include "plantflow/lp.hpp"

namespace plantflow::lp {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal:
      return "optimal";
    case LpStatus::infeasible:
      return "infeasible";
    case LpStatus::unbounded:
      return "unbounded";
  }
  return "?";
}

void check_structure(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) {
    throw StructuralError("objective has " + std::to_string(lp.objective.size()) +
                          " coefficients for " + std::to_string(lp.num_vars) + " variables");
  }
  if (lp.bounds.size() != lp.num_vars) {
    throw StructuralError("bounds given for " + std::to_string(lp.bounds.size()) + " of " +
                          std::to_string(lp.num_vars) + " variables");
  }
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    const Bounds& b = lp.bounds[j];
    if (!std::isfinite(b.lower) || b.lower < 0.0) {
      throw StructuralError("variable " + std::to_string(j) + " needs a finite lower bound >= 0");
    }
    if (std::isnan(b.upper) || b.upper < b.lower) {
      throw StructuralError("variable " + std::to_string(j) + " has upper bound below lower bound");
    }
    if (!std::isfinite(lp.objective[j])) {
      throw StructuralError("objective coefficient " + std::to_string(j) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < lp.equalities.size(); ++i) {
    const Constraint& row = lp.equalities[i];
    if (!std::isfinite(row.rhs)) {
      throw StructuralError("constraint " + std::to_string(i) + " has a non-finite rhs");
    }
    for (const Term& t : row.terms) {
      if (t.var >= lp.num_vars) {
        throw StructuralError("constraint " + std::to_string(i) + " references variable " +
                              std::to_string(t.var) + " of " + std::to_string(lp.num_vars));
      }
      if (!std::isfinite(t.coef)) {
        throw StructuralError("constraint " + std::to_string(i) + " has a non-finite coefficient");
      }
    }
  }
}

double max_equality_residual(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (const Constraint& row : lp.equalities) {
    double lhs = 0.0;
    for (const Term& t : row.terms) lhs += t.coef * x.at(t.var);
    worst = std::max(worst, std::abs(lhs - row.rhs));
  }
  return worst;
}

double max_bound_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    worst = std::max(worst, lp.bounds[j].lower - x.at(j));
    if (std::isfinite(lp.bounds[j].upper)) worst = std::max(worst, x.at(j) - lp.bounds[j].upper);
  }
  return worst;
}

namespace {

enum class VarState : std::uint8_t { basic, at_lower, at_upper };

constexpr double kPivotTolerance = 1e-9;

// Dense tableau over structural columns followed by one artificial column
// per row. Rows are sign-normalised so the initial artificial block is the
// identity; that block therefore always holds the current basis inverse.
class BoundedSimplex {
 public:
  BoundedSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), options_(options), n_(lp.num_vars) {
    stall_limit_ = options.stall_threshold ? options.stall_threshold : 3 * std::max<std::size_t>(n_, 1);
  }

  LpSolution solve() {
    LpSolution result;
    if (!presolve(result)) return result;

    cols_ = n_ + m_;
    max_iterations_ = options_.max_iterations ? options_.max_iterations : 50 * (m_ + cols_) + 1000;
    initialise();

    // Phase one: maximise -sum(artificials).
    std::vector<double> cost(cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = -1.0;
    if (run_phase(cost) == LpStatus::unbounded) {
      throw Error("simplex phase one reported unbounded; tableau is corrupt");
    }
    double infeasibility = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeasibility += std::abs(beta_[i]);
    }
    if (infeasibility > options_.tolerance * scale_) {
      result.status = LpStatus::infeasible;
      result.iterations = iterations_;
      result.primal = current_primal();
      return result;
    }

    for (std::size_t i = 0; i < m_; ++i) up_[n_ + i] = 0.0;
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t j = 0; j < n_; ++j) cost[j] = lp_.objective[j];
    const LpStatus status = run_phase(cost);

    refine_basic_values();
    result.status = status;
    result.iterations = iterations_;
    result.primal = current_primal();
    result.objective_value = 0.0;
    for (std::size_t j = 0; j < n_; ++j) result.objective_value += lp_.objective[j] * result.primal[j];
    return result;
  }

 private:
  double& at(std::size_t i, std::size_t j) { return tab_[i * cols_ + j]; }

  // Dense rows, all-zero rows dropped; false when such a row has a nonzero rhs.
  bool presolve(LpSolution& result) {
    scale_ = 1.0;
    for (const Constraint& row : lp_.equalities) {
      std::vector<double> dense(n_, 0.0);
      for (const Term& t : row.terms) dense[t.var] += t.coef;
      const bool empty = std::all_of(dense.begin(), dense.end(), [](double v) { return v == 0.0; });
      if (empty) {
        if (std::abs(row.rhs) > options_.tolerance) {
          result.status = LpStatus::infeasible;
          result.primal.resize(n_);
          for (std::size_t j = 0; j < n_; ++j) result.primal[j] = lp_.bounds[j].lower;
          return false;
        }
        continue;
      }
      rows_.push_back(std::move(dense));
      rhs_.push_back(row.rhs);
      scale_ = std::max(scale_, std::abs(row.rhs));
    }
    m_ = rows_.size();
    return true;
  }

  void initialise() {
    lo_.assign(cols_, 0.0);
    up_.assign(cols_, kInfinity);
    state_.assign(cols_, VarState::at_lower);
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = lp_.bounds[j].lower;
      up_[j] = lp_.bounds[j].upper;
    }
    tab_.assign(m_ * cols_, 0.0);
    beta_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    sign_.assign(m_, 1.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double residual = rhs_[i];
      for (std::size_t j = 0; j < n_; ++j) residual -= rows_[i][j] * lo_[j];
      sign_[i] = residual < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * rows_[i][j];
      at(i, n_ + i) = 1.0;
      beta_[i] = std::abs(residual);
      basis_[i] = n_ + i;
      state_[n_ + i] = VarState::basic;
    }
  }

  double nonbasic_value(std::size_t j) const {
    return state_[j] == VarState::at_upper ? up_[j] : lo_[j];
  }

  LpStatus run_phase(const std::vector<double>& cost) {
    d_.assign(cols_, 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (state_[j] == VarState::basic) continue;
      double dj = cost[j];
      for (std::size_t i = 0; i < m_; ++i) dj -= cost[basis_[i]] * at(i, j);
      d_[j] = dj;
    }
    const double tol = options_.tolerance;
    std::size_t stall = 0;
    bool bland = false;

    for (;;) {
      if (iterations_ >= max_iterations_) throw Error("simplex iteration limit exceeded");

      std::size_t q = cols_;
      double best = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::basic || up_[j] - lo_[j] <= 0.0) continue;
        const double dj = d_[j];
        const bool improving = (state_[j] == VarState::at_lower && dj > tol) ||
                               (state_[j] == VarState::at_upper && dj < -tol);
        if (!improving) continue;
        if (bland) {
          q = j;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          q = j;
        }
      }
      if (q == cols_) return LpStatus::optimal;

      const double dir = state_[q] == VarState::at_lower ? 1.0 : -1.0;
      double theta = up_[q] - lo_[q];
      std::size_t leave = m_;
      double leave_alpha = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double alpha = at(i, q);
        if (std::abs(alpha) <= kPivotTolerance) continue;
        const std::size_t k = basis_[i];
        const double rate = -dir * alpha;  // change of x_k per unit step
        double limit;
        if (rate < 0.0) {
          limit = (beta_[i] - lo_[k]) / -rate;
        } else {
          if (!std::isfinite(up_[k])) continue;
          limit = (up_[k] - beta_[i]) / rate;
        }
        limit = std::max(limit, 0.0);
        const double tie = 1e-12 * std::max(1.0, std::isfinite(theta) ? theta : 1.0);
        if (limit < theta - tie) {
          theta = limit;
          leave = i;
          leave_alpha = alpha;
        } else if (leave != m_ && limit <= theta + tie) {
          const bool better = bland ? basis_[i] < basis_[leave]
                                    : std::abs(alpha) > std::abs(leave_alpha);
          if (better) {
            theta = std::min(theta, limit);
            leave = i;
            leave_alpha = alpha;
          }
        }
      }
      if (!std::isfinite(theta)) return LpStatus::unbounded;

      ++iterations_;
      if (theta > 0.0) {
        for (std::size_t i = 0; i < m_; ++i) beta_[i] -= dir * at(i, q) * theta;
      }
      if (leave == m_) {
        state_[q] = state_[q] == VarState::at_lower ? VarState::at_upper : VarState::at_lower;
      } else {
        const std::size_t k = basis_[leave];
        const double rate = -dir * at(leave, q);
        const double entering_value = nonbasic_value(q) + dir * theta;
        state_[k] = rate < 0.0 ? VarState::at_lower : VarState::at_upper;
        pivot(leave, q);
        basis_[leave] = q;
        state_[q] = VarState::basic;
        beta_[leave] = entering_value;
      }

      if (theta <= tol) {
        if (++stall >= stall_limit_) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    const double p = at(r, q);
    nonzero_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      double& v = at(r, j);
      if (v != 0.0) {
        v /= p;
        nonzero_.push_back(j);
      }
    }
    at(r, q) = 1.0;
    const double* pivot_row = &tab_[r * cols_];
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      double* row = &tab_[i * cols_];
      for (std::size_t j : nonzero_) row[j] -= f * pivot_row[j];
      row[q] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (std::size_t j : nonzero_) d_[j] -= f * pivot_row[j];
    }
    d_[q] = 0.0;
  }

  // Recompute basic values from the original rows through the stored
  // basis inverse, removing drift accumulated by the incremental updates.
  void refine_basic_values() {
    std::vector<double> rhs(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      double r = rhs_[i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (state_[j] != VarState::basic && rows_[i][j] != 0.0) r -= rows_[i][j] * nonbasic_value(j);
      }
      rhs[i] = sign_[i] * r;
    }
    for (std::size_t r = 0; r < m_; ++r) {
      double v = 0.0;
      for (std::size_t i = 0; i < m_; ++i) v += at(r, n_ + i) * rhs[i];
      beta_[r] = v;
    }
  }

  std::vector<double> current_primal() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      if (state_[j] != VarState::basic) x[j] = nonbasic_value(j);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = beta_[i];
    }
    return x;
  }

  const LinearProgram& lp_;
  SimplexOptions options_;
  std::size_t n_;
  std::size_t m_ = 0;
  std::size_t cols_ = 0;
  std::size_t stall_limit_ = 0;
  std::size_t max_iterations_ = 0;
  std::size_t iterations_ = 0;
  double scale_ = 1.0;

  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<double> sign_;
  std::vector<double> tab_;
  std::vector<double> beta_;
  std::vector<double> lo_;
  std::vector<double> up_;
  std::vector<double> d_;
  std::vector<std::size_t> basis_;
  std::vector<VarState> state_;
  std::vector<std::size_t> nonzero_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  check_structure(lp);
  return BoundedSimplex(lp, options).solve();
}

}  // namespace plantflow::lp
