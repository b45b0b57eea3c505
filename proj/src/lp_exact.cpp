#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

#include "plantflow/errors.hpp"
#include "plantflow/lp.hpp"

namespace plantflow::lp {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

Rational exact(double v) {
  if (v == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(v, &exponent);
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num(scaled);
  if (exponent >= 0) return Rational(num << exponent);
  Integer den(1);
  den <<= -exponent;
  return Rational(num, den);
}

// Standard form  A y = b, y >= 0, b >= 0,  with y = x - lower and one
// slack per finite upper bound. Full tableau, Bland's rule.
class ExactSimplex {
 public:
  explicit ExactSimplex(const LinearProgram& lp) : lp_(lp), n_(lp.num_vars) {}

  LpSolution solve() {
    build();
    LpSolution result;

    std::vector<Rational> cost(cols_, Rational(0));
    for (std::size_t a = art_begin_; a < cols_; ++a) cost[a] = -1;
    run(cost, cols_);
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] >= art_begin_) infeasibility += rhs_[i];
    }
    if (infeasibility > 0) {
      result.status = LpStatus::infeasible;
      result.iterations = iterations_;
      result.primal = primal();
      return result;
    }
    drive_out_artificials();

    std::fill(cost.begin(), cost.end(), Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = exact(lp_.objective[j]);
    const bool bounded = run(cost, art_begin_);

    result.status = bounded ? LpStatus::optimal : LpStatus::unbounded;
    result.iterations = iterations_;
    result.primal = primal();
    Rational value = 0;
    for (std::size_t j = 0; j < n_; ++j) value += cost[j] * (exact(lp_.bounds[j].lower) + y(j));
    result.objective_value = value.convert_to<double>();
    return result;
  }

 private:
  void build() {
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<Rational> lower(n_);
    for (std::size_t j = 0; j < n_; ++j) lower[j] = exact(lp_.bounds[j].lower);

    for (const Constraint& c : lp_.equalities) {
      std::vector<Rational> row(n_, Rational(0));
      for (const Term& t : c.terms) row[t.var] += exact(t.coef);
      Rational b = exact(c.rhs);
      for (std::size_t j = 0; j < n_; ++j) b -= row[j] * lower[j];
      rows.push_back(std::move(row));
      rhs.push_back(std::move(b));
    }
    std::vector<std::size_t> bounded;
    for (std::size_t j = 0; j < n_; ++j) {
      if (std::isfinite(lp_.bounds[j].upper)) bounded.push_back(j);
    }
    const std::size_t slack_begin = n_;
    art_begin_ = n_ + bounded.size();
    for (std::size_t s = 0; s < bounded.size(); ++s) {
      std::vector<Rational> row(n_, Rational(0));
      row[bounded[s]] = 1;
      rows.push_back(std::move(row));
      rhs.push_back(exact(lp_.bounds[bounded[s]].upper) - lower[bounded[s]]);
    }

    rows_ = rows.size();
    cols_ = art_begin_ + rows_;
    tab_.assign(rows_, std::vector<Rational>(cols_, Rational(0)));
    rhs_.assign(rows_, Rational(0));
    basis_.assign(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const int sign = rhs[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = sign * rows[i][j];
      if (i >= lp_.equalities.size()) tab_[i][slack_begin + (i - lp_.equalities.size())] = sign;
      tab_[i][art_begin_ + i] = 1;
      rhs_[i] = sign * rhs[i];
      basis_[i] = art_begin_ + i;
    }
  }

  // Maximises cost over columns [0, active); false when unbounded.
  bool run(const std::vector<Rational>& cost, std::size_t active) {
    for (;;) {
      std::size_t q = active;
      for (std::size_t j = 0; j < active && q == active; ++j) {
        if (is_basic(j)) continue;
        Rational dj = cost[j];
        for (std::size_t i = 0; i < rows_; ++i) dj -= cost[basis_[i]] * tab_[i][j];
        if (dj > 0) q = j;
      }
      if (q == active) return true;

      std::size_t r = rows_;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tab_[i][q] <= 0) continue;
        Rational ratio = rhs_[i] / tab_[i][q];
        if (r == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[r])) {
          best = ratio;
          r = i;
        }
      }
      if (r == rows_) return false;
      pivot(r, q);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_;) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      std::size_t q = art_begin_;
      for (std::size_t j = 0; j < art_begin_; ++j) {
        if (!is_basic(j) && tab_[i][j] != 0) {
          q = j;
          break;
        }
      }
      if (q == art_begin_) {
        // Redundant row.
        tab_.erase(tab_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        --rows_;
        continue;
      }
      pivot(i, q);
      ++i;
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    ++iterations_;
    const Rational p = tab_[r][q];
    for (auto& v : tab_[r]) v /= p;
    rhs_[r] /= p;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || tab_[i][q] == 0) continue;
      const Rational f = tab_[i][q];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (tab_[r][j] != 0) tab_[i][j] -= f * tab_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = q;
  }

  bool is_basic(std::size_t j) const {
    for (std::size_t b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  Rational y(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] == j) return rhs_[i];
    }
    return Rational(0);
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      x[j] = (exact(lp_.bounds[j].lower) + y(j)).convert_to<double>();
    }
    return x;
  }

  const LinearProgram& lp_;
  std::size_t n_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t art_begin_ = 0;
  std::size_t iterations_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpSolution solve_lp_exact(const LinearProgram& lp) {
  check_structure(lp);
  if (lp.num_vars > kExactMaxVars) {
    throw StructuralError("exact simplex accepts at most " + std::to_string(kExactMaxVars) +
                          " variables, got " + std::to_string(lp.num_vars));
  }
  return ExactSimplex(lp).solve();
}

}  // namespace plantflow::lp
