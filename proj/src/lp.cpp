#include "sr/lp.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace sr {

Rat evaluate(const std::vector<std::pair<int, Rat>>& form, const std::vector<Rat>& point) {
  Rat acc = 0;
  for (const auto& [var, coef] : form) acc += coef * point[var];
  return acc;
}

std::optional<int> verify_solution(const LinearProgram& lp, const std::vector<Rat>& point) {
  for (int i = 0; i < static_cast<int>(lp.rows.size()); ++i) {
    const LpRow& row = lp.rows[i];
    Rat lhs = evaluate(row.coeffs, point);
    bool ok = true;
    switch (row.rel) {
      case Relation::LessEq: ok = lhs <= row.rhs; break;
      case Relation::GreaterEq: ok = lhs >= row.rhs; break;
      case Relation::Eq: ok = lhs == row.rhs; break;
    }
    if (!ok) return i;
  }
  return std::nullopt;
}

std::string dump_program(const LinearProgram& lp) {
  std::ostringstream out;
  out << (lp.sense == Sense::Maximize ? "max" : "min");
  for (const auto& [v, c] : lp.objective) out << ' ' << c << "*x" << v;
  out << '\n';
  for (const auto& row : lp.rows) {
    for (const auto& [v, c] : row.coeffs) out << c << "*x" << v << ' ';
    switch (row.rel) {
      case Relation::LessEq: out << "<= "; break;
      case Relation::GreaterEq: out << ">= "; break;
      case Relation::Eq: out << "== "; break;
    }
    out << row.rhs << '\n';
  }
  return out.str();
}

namespace {

// Full-tableau simplex state. The final tableau row holds the reduced costs
// of the phase in progress and, in the rhs slot, the current objective value.
struct Tableau {
  int m = 0;      // constraint rows
  int ncols = 0;  // structural columns (original + slack + artificial)
  std::vector<std::vector<Rat>> t;  // (m+1) x (ncols+1)
  std::vector<int> basis;           // column basic in each row
  std::vector<bool> forbidden;      // columns banned from entering (artificials)
  long pivots = 0;
  long pivot_limit = kDefaultPivotLimit;

  Rat& at(int i, int j) { return t[i][j]; }
  Rat& rhs(int i) { return t[i][ncols]; }
  std::vector<Rat>& zrow() { return t[m]; }

  void pivot(int row, int col) {
    if (++pivots > pivot_limit) {
      throw LpError(LpError::Kind::IterationLimitExceeded,
                    "simplex pivot limit (" + std::to_string(pivot_limit) + ") exceeded");
    }
    std::vector<Rat>& pr = t[row];
    const Rat inv_piv = Rat(1) / pr[col];
    for (Rat& x : pr) x *= inv_piv;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const Rat factor = t[i][col];
      if (factor == 0) continue;
      std::vector<Rat>& ri = t[i];
      for (int j = 0; j <= ncols; ++j) {
        if (pr[j] != 0) ri[j] -= factor * pr[j];
      }
    }
    basis[row] = col;
  }

  // Recomputes the reduced-cost row for cost vector c (dense over columns).
  // Assumes basic columns are unit vectors, which pivot() maintains.
  void load_costs(const std::vector<Rat>& c) {
    for (int j = 0; j <= ncols; ++j) t[m][j] = (j < ncols) ? -c[j] : Rat(0);
    for (int i = 0; i < m; ++i) {
      const Rat cb = c[basis[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= ncols; ++j) {
        if (t[i][j] != 0) t[m][j] += cb * t[i][j];
      }
    }
  }

  // Bland's rule. Returns Optimal, Unbounded, or pivots until one of them.
  enum class Result { Optimal, Unbounded };
  Result run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!forbidden[j] && t[m][j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Result::Optimal;
      int leave = -1;
      Rat best_ratio = 0;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] <= 0) continue;
        Rat ratio = rhs(i) / t[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return Result::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp, long pivot_limit) {
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());
  for (const auto& [v, c] : lp.objective) {
    if (v < 0 || v >= n) {
      throw LpError(LpError::Kind::MalformedProgram,
                    "objective references variable " + std::to_string(v));
    }
  }
  for (const auto& row : lp.rows) {
    for (const auto& [v, c] : row.coeffs) {
      if (v < 0 || v >= n) {
        throw LpError(LpError::Kind::MalformedProgram,
                      "row references variable " + std::to_string(v));
      }
    }
  }

  // Dense row data with rhs normalized to be non-negative.
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> b(m, 0);
  std::vector<Relation> rel(m);
  for (int i = 0; i < m; ++i) {
    const LpRow& row = lp.rows[i];
    for (const auto& [v, c] : row.coeffs) a[i][v] += c;
    b[i] = row.rhs;
    rel[i] = row.rel;
    if (b[i] < 0) {
      for (Rat& x : a[i]) x = -x;
      b[i] = -b[i];
      if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
      else if (rel[i] == Relation::GreaterEq) rel[i] = Relation::LessEq;
    }
  }

  // Column layout: originals, then one slack/surplus per inequality row,
  // then one artificial per >= or == row.
  int ncols = n;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rel[i] != Relation::Eq) slack_col[i] = ncols++;
  }
  int first_art = ncols;
  for (int i = 0; i < m; ++i) {
    if (rel[i] != Relation::LessEq) art_col[i] = ncols++;
  }

  Tableau tab;
  tab.m = m;
  tab.ncols = ncols;
  tab.pivot_limit = pivot_limit;
  tab.t.assign(m + 1, std::vector<Rat>(ncols + 1, Rat(0)));
  tab.basis.assign(m, -1);
  tab.forbidden.assign(ncols, false);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.at(i, j) = a[i][j];
    tab.rhs(i) = b[i];
    if (slack_col[i] >= 0) tab.at(i, slack_col[i]) = (rel[i] == Relation::LessEq) ? 1 : -1;
    if (art_col[i] >= 0) tab.at(i, art_col[i]) = 1;
    tab.basis[i] = (art_col[i] >= 0) ? art_col[i] : slack_col[i];
  }

  const bool need_phase1 = first_art < ncols;
  if (need_phase1) {
    std::vector<Rat> phase1_cost(ncols, 0);
    for (int j = first_art; j < ncols; ++j) phase1_cost[j] = -1;  // maximize -sum(artificials)
    tab.load_costs(phase1_cost);
    Tableau::Result r = tab.run();
    assert(r == Tableau::Result::Optimal);  // phase-1 objective is bounded by 0
    (void)r;
    if (tab.zrow()[ncols] != 0) {
      return LpOutcome{LpOutcome::Status::Infeasible, {}, 0};
    }
    // Drive leftover zero-valued artificials out of the basis; an all-zero
    // row over the real columns is redundant and gets dropped.
    for (int i = tab.m - 1; i >= 0; --i) {
      if (tab.basis[i] < first_art) continue;
      int col = -1;
      for (int j = 0; j < first_art; ++j) {
        if (tab.at(i, j) != 0) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.t.erase(tab.t.begin() + i);
        tab.basis.erase(tab.basis.begin() + i);
        --tab.m;
      }
    }
    for (int j = first_art; j < ncols; ++j) tab.forbidden[j] = true;
  }

  std::vector<Rat> cost(ncols, 0);
  for (const auto& [v, c] : lp.objective) cost[v] += (lp.sense == Sense::Maximize) ? c : -c;
  tab.load_costs(cost);
  if (tab.run() == Tableau::Result::Unbounded) {
    return LpOutcome{LpOutcome::Status::Unbounded, {}, 0};
  }

  std::vector<Rat> x(n, 0);
  for (int i = 0; i < tab.m; ++i) {
    if (tab.basis[i] < n) x[tab.basis[i]] = tab.rhs(i);
  }
  return LpOutcome{LpOutcome::Status::Optimal, x, evaluate(lp.objective, x)};
}

}  // namespace sr
