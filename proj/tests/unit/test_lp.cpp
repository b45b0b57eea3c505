#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "plantflow/errors.hpp"
#include "plantflow/lp.hpp"
#include "random_lp.hpp"

using namespace plantflow::lp;

namespace {

LinearProgram make(std::size_t n, std::vector<double> objective) {
  LinearProgram lp;
  lp.num_vars = n;
  lp.objective = std::move(objective);
  lp.bounds.assign(n, Bounds{});
  return lp;
}

}  // namespace

TEST_CASE("bound-attained optimum") {
  auto lp = make(1, {1.0});
  lp.bounds[0].upper = 5.0;
  const auto s = solve_lp(lp);
  CHECK(s.status == LpStatus::optimal);
  CHECK(s.objective_value == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("equality forces the objective") {
  auto lp = make(2, {1.0, 1.0});
  lp.bounds = {{0, 1}, {0, 1}};
  lp.equalities.push_back({{{0, 1.0}, {1, 1.0}}, 1.5});
  const auto s = solve_lp(lp);
  CHECK(s.status == LpStatus::optimal);
  CHECK(std::abs(s.objective_value - 1.5) <= 1e-9);
  CHECK(max_equality_residual(lp, s.primal) <= 1e-9);
  CHECK(max_bound_violation(lp, s.primal) <= 1e-9);
}

TEST_CASE("contradictory equalities are infeasible") {
  auto lp = make(1, {1.0});
  lp.equalities.push_back({{{0, 1.0}}, 1.0});
  lp.equalities.push_back({{{0, 1.0}}, 2.0});
  CHECK(solve_lp(lp).status == LpStatus::infeasible);
  CHECK(solve_lp_exact(lp).status == LpStatus::infeasible);
}

TEST_CASE("unbounded direction is reported") {
  auto lp = make(2, {1.0, 0.0});
  lp.equalities.push_back({{{0, 1.0}, {1, -1.0}}, 0.0});
  CHECK(solve_lp(lp).status == LpStatus::unbounded);
  CHECK(solve_lp_exact(lp).status == LpStatus::unbounded);
}

TEST_CASE("all-zero rows") {
  auto lp = make(1, {1.0});
  lp.bounds[0].upper = 2.0;
  lp.equalities.push_back({{{0, 0.0}}, 0.0});
  lp.equalities.push_back({{}, 0.0});
  CHECK(solve_lp(lp).status == LpStatus::optimal);
  lp.equalities.push_back({{}, 1.0});
  CHECK(solve_lp(lp).status == LpStatus::infeasible);
}

TEST_CASE("structural errors are raised before solving") {
  auto lp = make(2, {1.0});
  CHECK_THROWS_AS(solve_lp(lp), plantflow::StructuralError);
  lp = make(2, {1.0, 1.0});
  lp.equalities.push_back({{{5, 1.0}}, 0.0});
  CHECK_THROWS_AS(solve_lp(lp), plantflow::StructuralError);
  lp = make(1, {1.0});
  lp.bounds[0] = {2.0, 1.0};
  CHECK_THROWS_AS(solve_lp(lp), plantflow::StructuralError);
  lp = make(13, std::vector<double>(13, 1.0));
  for (auto& b : lp.bounds) b.upper = 1.0;
  CHECK(solve_lp(lp).objective_value == doctest::Approx(13.0));
  CHECK_THROWS_AS(solve_lp_exact(lp), plantflow::StructuralError);
}

TEST_CASE("degenerate cycling example terminates at the optimum") {
  // Beale's example with explicit slacks x4..x6; Dantzig pricing with a
  // naive tie rule cycles on it from the slack basis.
  auto lp = make(7, {0.75, -20.0, 0.5, -6.0, 0.0, 0.0, 0.0});
  lp.equalities.push_back({{{0, 0.25}, {1, -8.0}, {2, -1.0}, {3, 9.0}, {4, 1.0}}, 0.0});
  lp.equalities.push_back({{{0, 0.5}, {1, -12.0}, {2, -0.5}, {3, 3.0}, {5, 1.0}}, 0.0});
  lp.equalities.push_back({{{2, 1.0}, {6, 1.0}}, 1.0});
  const auto s = solve_lp(lp);
  const auto e = solve_lp_exact(lp);
  REQUIRE(s.status == LpStatus::optimal);
  REQUIRE(e.status == LpStatus::optimal);
  CHECK(std::abs(s.objective_value - e.objective_value) <= 1e-9);
  CHECK(e.objective_value == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("float simplex agrees with the exact rational simplex") {
  std::mt19937_64 rng(2024);
  int optimal = 0;
  int infeasible = 0;
  int unbounded = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto lp = lpgen::random_lp(rng);
    const auto fs = solve_lp(lp);
    const auto es = solve_lp_exact(lp);
    INFO("trial " << trial);
    REQUIRE(fs.status == es.status);
    if (fs.status == LpStatus::optimal) {
      ++optimal;
      CHECK(std::abs(fs.objective_value - es.objective_value) <= 1e-9);
      CHECK(max_equality_residual(lp, fs.primal) <= 1e-9);
      CHECK(max_bound_violation(lp, fs.primal) <= 1e-9);
      double dot = 0.0;
      for (std::size_t j = 0; j < lp.num_vars; ++j) dot += lp.objective[j] * fs.primal[j];
      CHECK(std::abs(dot - fs.objective_value) <= 1e-9);
      CHECK(max_equality_residual(lp, es.primal) <= 1e-9);
    } else if (fs.status == LpStatus::infeasible) {
      ++infeasible;
    } else {
      ++unbounded;
    }
  }
  // The generator should exercise every outcome.
  CHECK(optimal > 100);
  CHECK(infeasible > 10);
  CHECK(unbounded > 5);
}

TEST_CASE("identical inputs give bit-identical outputs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lp = lpgen::random_lp(rng);
    const auto a = solve_lp(lp);
    const auto b = solve_lp(lp);
    CHECK(a.status == b.status);
    CHECK(std::memcmp(&a.objective_value, &b.objective_value, sizeof(double)) == 0);
    CHECK(a.primal == b.primal);
    CHECK(a.iterations == b.iterations);
  }
}
