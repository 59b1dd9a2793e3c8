#include "sr/oracle.hpp"

#include "sr/verify.hpp"

#include <algorithm>
#include <string>

namespace sr {

namespace {

bool extend(const Instance& inst, Matching& current, std::vector<char>& used, EdgeId from,
            const std::function<bool(const Matching&)>& visit) {
  if (!visit(current)) return false;
  for (EdgeId e = from; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    if (used[u] || used[v]) continue;
    used[u] = used[v] = 1;
    current.edges.push_back(e);
    bool keep_going = extend(inst, current, used, e + 1, visit);
    current.edges.pop_back();
    used[u] = used[v] = 0;
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void enumerate_matchings(const Instance& inst, const std::function<bool(const Matching&)>& visit,
                         int edge_cap) {
  if (inst.num_edges() > edge_cap) {
    throw OracleError(OracleError::Kind::TooLarge,
                      "instance has " + std::to_string(inst.num_edges()) +
                          " edges, enumeration cap is " + std::to_string(edge_cap));
  }
  Matching current;
  std::vector<char> used(inst.num_vertices(), 0);
  extend(inst, current, used, 0, visit);
}

std::optional<Matching> brute_force_exists(const Instance& inst, int edge_cap) {
  std::optional<Matching> found;
  enumerate_matchings(
      inst,
      [&](const Matching& mu) {
        if (!strongly_stable(inst, mu)) {
          found = mu;
          return false;
        }
        return true;
      },
      edge_cap);
  return found;
}

namespace {

// All surjections-onto-an-initial-segment rank vectors of length m, in
// lexicographic order; these are exactly the weak orders over m items.
std::vector<std::vector<int>> weak_order_ranks(int m, bool all_weak_orders) {
  std::vector<std::vector<int>> out;
  if (m == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> ranks(m, 0);
  for (;;) {
    int max_rank = *std::max_element(ranks.begin(), ranks.end());
    std::vector<char> seen(max_rank + 1, 0);
    for (int r : ranks) seen[r] = 1;
    bool onto = std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    bool strict = max_rank == m - 1;  // all ranks distinct
    if (onto && (all_weak_orders || strict)) out.push_back(ranks);
    int i = m - 1;
    while (i >= 0 && ranks[i] == m - 1) ranks[i--] = 0;
    if (i < 0) break;
    ++ranks[i];
  }
  return out;
}

}  // namespace

void enumerate_instances(int n, bool all_weak_orders,
                         const std::function<bool(const Instance&)>& visit) {
  if (n < 1 || n > kMaxExhaustiveAgents) {
    throw OracleError(OracleError::Kind::TooLarge,
                      "exhaustive enumeration supports 1 <= n <= " +
                          std::to_string(kMaxExhaustiveAgents));
  }
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("a" + std::to_string(v));
  // partner lists in vertex-id order; ranks index into them
  std::vector<std::vector<VertexId>> partners(n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      if (w != v) partners[v].push_back(w);
    }
  }
  const auto choices = weak_order_ranks(n - 1, all_weak_orders);

  std::vector<size_t> pick(n, 0);
  for (;;) {
    std::vector<std::vector<std::vector<VertexId>>> groups(n);
    for (int v = 0; v < n; ++v) {
      const auto& ranks = choices[pick[v]];
      int ngroups = n == 1 ? 0 : 1 + *std::max_element(ranks.begin(), ranks.end());
      groups[v].assign(ngroups, {});
      for (int k = 0; k < n - 1; ++k) groups[v][ranks[k]].push_back(partners[v][k]);
    }
    if (!visit(Instance::build(names, groups))) return;
    int v = n - 1;
    while (v >= 0 && pick[v] + 1 == choices.size()) pick[v--] = 0;
    if (v < 0) break;
    ++pick[v];
  }
}

}  // namespace sr
