#pragma once

#include "sr/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

struct LpError : std::runtime_error {
  enum class Kind { MalformedProgram, IterationLimitExceeded };
  LpError(Kind k, const std::string& message)
      : std::runtime_error(message), kind(k) {}
  Kind kind;
};

enum class Relation { LessEq, GreaterEq, Eq };
enum class Sense { Maximize, Minimize };

struct LpRow {
  std::vector<std::pair<int, Rat>> coeffs;  // sparse (var, coefficient)
  Relation rel = Relation::LessEq;
  Rat rhs = 0;
};

/// A linear program over variables x_0..x_{num_vars-1}, all implicitly >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<LpRow> rows;
  std::vector<std::pair<int, Rat>> objective;  // sparse
  Sense sense = Sense::Maximize;
};

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::vector<Rat> point;  // size num_vars when Optimal, else empty
  Rat value = 0;           // optimal objective value when Optimal
};

inline constexpr long kDefaultPivotLimit = 1'000'000;

/**
 * Exact two-phase primal simplex with Bland's anti-cycling rule. All
 * arithmetic is rational; termination is guaranteed and the returned point
 * is a basic feasible solution that satisfies every row exactly.
 *
 * The pivot limit is a defensive cap distinguishing a bug-induced loop from
 * a legitimate long run; exceeding it throws, it never degrades the answer.
 */
LpOutcome solve_lp(const LinearProgram& lp, long pivot_limit = kDefaultPivotLimit);

/// Index of the first row the point violates (exact comparison), if any.
std::optional<int> verify_solution(const LinearProgram& lp, const std::vector<Rat>& point);

/// Exact evaluation of a sparse linear form at a point.
Rat evaluate(const std::vector<std::pair<int, Rat>>& form, const std::vector<Rat>& point);

/// Multi-line tableau-style dump of the program, for troubleshooting.
std::string dump_program(const LinearProgram& lp);

}  // namespace sr
