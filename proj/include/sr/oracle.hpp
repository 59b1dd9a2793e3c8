#pragma once

#include "sr/instance.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace sr {

struct OracleError : std::runtime_error {
  enum class Kind { TooLarge };
  OracleError(Kind k, const std::string& message) : std::runtime_error(message), kind(k) {}
  Kind kind;
};

inline constexpr int kDefaultMatchingEdgeCap = 24;
inline constexpr int kMaxExhaustiveAgents = 4;

/**
 * Visits every matching of the instance exactly once (the empty matching
 * first), in lexicographic order of the sorted edge-id lists. The visitor
 * returns false to stop early. Enumeration cost is proportional to the
 * number of matchings, but the edge cap guards against degenerate blowups.
 */
void enumerate_matchings(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                         int edge_cap = kDefaultMatchingEdgeCap);

/// First strongly stable matching in enumeration order, if any. Pure
/// definition-based search; shares no machinery with the LP solver.
std::optional<Matching> brute_force_exists(const Instance& inst,
                                           int edge_cap = kDefaultMatchingEdgeCap);

/**
 * Visits one instance per preference profile on the complete graph K_n
 * (agents a0..a{n-1}). With all_weak_orders, every agent independently takes
 * every weak order over its n-1 incident edges (13^4 = 28561 instances for
 * n = 4); otherwise only the strict orders. n is capped at 4.
 */
void enumerate_instances(int n, bool all_weak_orders,
                         const std::function<bool(const Instance&)>& visit);

}  // namespace sr
