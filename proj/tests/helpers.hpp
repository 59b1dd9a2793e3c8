#pragma once

#include "sr/instance.hpp"
#include "sr/lp.hpp"
#include "sr/rational.hpp"

#include <optional>
#include <vector>

namespace sr::testing {

// --- shared fixture instances -------------------------------------------

/// agents a,b; single edge; simplest valid instance.
inline Instance single_edge() {
  return parse_instance("agents: a b\nprefs a: b\nprefs b: a\n");
}

/// Path a-b-c where b is indifferent between both edges. No strongly
/// stable matching exists (every matching is blocked).
inline Instance path_tie() {
  return parse_instance("agents: a b c\nprefs a: b\nprefs b: (a c)\nprefs c: b\n");
}

/// Path a-b-c with b strictly preferring ab. {ab} is strongly stable.
inline Instance path_strict() {
  return parse_instance("agents: a b c\nprefs a: b\nprefs b: a c\nprefs c: b\n");
}

/// Triangle with cyclic strict preferences (a: b>c, b: c>a, c: a>b).
/// No strongly stable matching exists.
inline Instance cyclic_triangle() {
  return parse_instance("agents: a b c\nprefs a: b c\nprefs b: c a\nprefs c: a b\n");
}

/// 4-cycle a-b-c-d-a where ab and cd are mutual first choices.
inline Instance four_cycle_mutual() {
  return parse_instance(
      "agents: a b c d\n"
      "prefs a: b d\n"
      "prefs b: a c\n"
      "prefs c: d b\n"
      "prefs d: c a\n");
}

/// Complete graph on 4 agents, arbitrary strict preferences.
inline Instance k4_strict() {
  return parse_instance(
      "agents: a b c d\n"
      "prefs a: b c d\n"
      "prefs b: c a d\n"
      "prefs c: a b d\n"
      "prefs d: a b c\n");
}

// --- independent brute-force LP oracle ------------------------------------
//
// Enumerates every candidate basic point (each subset of num_vars
// constraints, drawn from the rows and the x_j >= 0 planes, solved as a
// square linear system) and keeps the feasible ones. Sound for pointed
// feasible regions, so callers must keep test programs bounded (the
// generators below add box rows). Entirely independent of solve_lp.

struct BruteLpResult {
  bool feasible = false;
  Rat value = 0;  // optimal objective when feasible
};

inline std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> a,
                                                    std::vector<Rat> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return std::nullopt;  // singular
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    Rat inv = Rat(1) / a[col][col];
    for (Rat& x : a[col]) x *= inv;
    b[col] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

inline bool feasible_point(const LinearProgram& lp, const std::vector<Rat>& x) {
  for (const Rat& xi : x) {
    if (xi < 0) return false;
  }
  return !verify_solution(lp, x).has_value();
}

inline BruteLpResult brute_force_lp(const LinearProgram& lp) {
  const int n = lp.num_vars;
  // constraint pool: rows, then nonnegativity planes
  std::vector<std::pair<std::vector<Rat>, Rat>> pool;
  for (const LpRow& row : lp.rows) {
    std::vector<Rat> dense(n, 0);
    for (const auto& [v, c] : row.coeffs) dense[v] += c;
    pool.emplace_back(std::move(dense), row.rhs);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rat> dense(n, 0);
    dense[j] = 1;
    pool.emplace_back(std::move(dense), 0);
  }

  BruteLpResult result;
  bool first = true;
  const int pool_size = static_cast<int>(pool.size());
  // iterate all increasing index tuples of length n
  auto consider = [&](const std::vector<int>& idx) {
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (int i : idx) {
      a.push_back(pool[i].first);
      b.push_back(pool[i].second);
    }
    auto x = solve_square(std::move(a), std::move(b));
    if (!x || !feasible_point(lp, *x)) return;
    Rat val = evaluate(lp.objective, *x);
    bool better = lp.sense == Sense::Maximize ? val > result.value : val < result.value;
    if (first || better) {
      result.value = val;
      first = false;
    }
    result.feasible = true;
  };
  if (n == 0) {
    std::vector<Rat> empty;
    if (feasible_point(lp, empty)) {
      result.feasible = true;
      result.value = 0;
    }
    return result;
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  if (pool_size < n) return result;
  for (;;) {
    consider(idx);
    int i = n - 1;
    while (i >= 0 && idx[i] == pool_size - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return result;
}

}  // namespace sr::testing
