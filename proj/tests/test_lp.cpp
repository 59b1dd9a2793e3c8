#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "sr/lp.hpp"
#include "sr/prng.hpp"

using namespace sr;
using namespace sr::testing;

namespace {

LpRow row(std::vector<std::pair<int, Rat>> coeffs, Relation rel, Rat rhs) {
  return LpRow{std::move(coeffs), rel, std::move(rhs)};
}

}  // namespace

TEST_CASE("single variable bound") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, 1));
  lp.objective = {{0, 1}};
  LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.point[0] == 1);
  CHECK(out.value == 1);
}

TEST_CASE("infeasible pair of bounds") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows.push_back(row({{0, 1}}, Relation::GreaterEq, 1));
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, Rat(1, 2)));
  lp.objective = {{0, 1}};
  CHECK(solve_lp(lp).status == LpOutcome::Status::Infeasible);
}

TEST_CASE("two variables, oracle-checked optimum") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 1}}, Relation::LessEq, 1));
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, Rat(1, 3)));
  lp.objective = {{0, 1}, {1, 1}};

  BruteLpResult oracle = brute_force_lp(lp);
  REQUIRE(oracle.feasible);
  CHECK(oracle.value == 1);

  LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == oracle.value);
  CHECK(!verify_solution(lp, out.point).has_value());
}

TEST_CASE("unbounded when nothing constrains the objective") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, 5));
  lp.objective = {{1, 1}};
  CHECK(solve_lp(lp).status == LpOutcome::Status::Unbounded);
}

TEST_CASE("equality rows and minimization") {
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back(row({{0, 1}, {1, 2}}, Relation::Eq, Rat(3, 2)));
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, 1));
  lp.objective = {{0, 1}};
  lp.sense = Sense::Minimize;
  LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == 0);        // x0 = 0, x1 = 3/4
  CHECK(out.point[1] == Rat(3, 4));
}

TEST_CASE("verify_solution pinpoints the first violated row") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows.push_back(row({{0, 1}}, Relation::LessEq, 1));
  CHECK(!verify_solution(lp, {Rat(1)}).has_value());  // boundary is feasible
  CHECK(verify_solution(lp, {Rat(3, 2)}) == 0);

  LinearProgram eq;
  eq.num_vars = 1;
  eq.rows.push_back(row({{0, 1}}, Relation::Eq, Rat(1, 3)));
  CHECK(verify_solution(eq, {Rat(333, 1000)}) == 0);  // close is not equal
  CHECK(!verify_solution(eq, {Rat(1, 3)}).has_value());
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp;
  lp.num_vars = 1;
  lp.rows.push_back(row({{2, 1}}, Relation::LessEq, 1));
  CHECK_THROWS_AS(solve_lp(lp), LpError);
}

TEST_CASE("degenerate program with redundant equalities") {
  // x0 = 0 twice plus a free-ish second variable
  LinearProgram lp;
  lp.num_vars = 2;
  lp.rows.push_back(row({{0, 1}}, Relation::Eq, 0));
  lp.rows.push_back(row({{0, 2}}, Relation::Eq, 0));
  lp.rows.push_back(row({{1, 1}}, Relation::LessEq, 7));
  lp.objective = {{0, 1}, {1, 1}};
  LpOutcome out = solve_lp(lp);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == 7);
  CHECK(out.point[0] == 0);
}

TEST_CASE("agreement with basis-enumeration oracle on random programs") {
  SplitMix64 rng(42);
  int feasible_count = 0;
  for (int round = 0; round < 300; ++round) {
    LinearProgram lp;
    lp.num_vars = 1 + static_cast<int>(rng.below(4));
    // box rows keep every program bounded, so the vertex oracle is complete
    for (int j = 0; j < lp.num_vars; ++j) {
      lp.rows.push_back(row({{j, 1}}, Relation::LessEq, Rat(1 + (int)rng.below(4))));
    }
    int extra = static_cast<int>(rng.below(3));
    for (int k = 0; k < extra; ++k) {
      LpRow r;
      for (int j = 0; j < lp.num_vars; ++j) {
        int c = static_cast<int>(rng.below(7)) - 3;
        if (c != 0) r.coeffs.emplace_back(j, c);
      }
      r.rel = rng.below(3) == 0 ? Relation::GreaterEq
            : rng.below(2) == 0 ? Relation::LessEq
                                : Relation::Eq;
      r.rhs = Rat(static_cast<int>(rng.below(9)) - 2);
      lp.rows.push_back(std::move(r));
    }
    for (int j = 0; j < lp.num_vars; ++j) {
      int c = static_cast<int>(rng.below(9)) - 4;
      if (c != 0) lp.objective.emplace_back(j, c);
    }
    lp.sense = rng.below(2) ? Sense::Maximize : Sense::Minimize;

    BruteLpResult oracle = brute_force_lp(lp);
    LpOutcome out = solve_lp(lp);
    if (oracle.feasible) {
      ++feasible_count;
      REQUIRE(out.status == LpOutcome::Status::Optimal);
      CHECK(out.value == oracle.value);
      CHECK(!verify_solution(lp, out.point).has_value());
      for (const Rat& xi : out.point) CHECK(xi >= 0);
      // determinism
      LpOutcome again = solve_lp(lp);
      CHECK(again.point == out.point);
      CHECK(again.value == out.value);
    } else {
      CHECK(out.status == LpOutcome::Status::Infeasible);
    }
  }
  CHECK(feasible_count > 100);  // the generator should not degenerate
}
