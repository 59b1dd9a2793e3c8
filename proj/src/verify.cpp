#include "sr/verify.hpp"

#include <algorithm>

namespace sr {

bool is_matching(const Instance& inst, const std::vector<EdgeId>& edges) {
  std::vector<char> used(inst.num_vertices(), 0);
  for (EdgeId e : edges) {
    if (e < 0 || e >= inst.num_edges()) {
      throw VerifyError(VerifyError::Kind::UnknownEdge,
                        "edge id " + std::to_string(e) + " out of range");
    }
    auto [u, v] = inst.endpoints(e);
    if (used[u] || used[v]) return false;
    used[u] = used[v] = 1;
  }
  return true;
}

namespace {

// mu(v) as an edge id, or -1 when v is unmatched.
std::vector<EdgeId> matched_edge_of(const Instance& inst, const Matching& mu) {
  std::vector<EdgeId> at(inst.num_vertices(), -1);
  for (EdgeId e : mu.edges) {
    auto [u, v] = inst.endpoints(e);
    at[u] = e;
    at[v] = e;
  }
  return at;
}

}  // namespace

BlockReport blocks(const Instance& inst, const Matching& mu, EdgeId e) {
  if (std::find(mu.edges.begin(), mu.edges.end(), e) != mu.edges.end()) {
    throw VerifyError(VerifyError::Kind::EdgeInMatching,
                      "edge " + inst.edge_name(e) + " is in the matching");
  }
  auto at = matched_edge_of(inst, mu);
  auto [u, v] = inst.endpoints(e);
  BlockReport rep;
  VertexId ends[2] = {u, v};
  for (int k = 0; k < 2; ++k) {
    VertexId w = ends[k];
    if (at[w] < 0) {
      // every incident edge beats being unmatched
      rep.weak_on[k] = rep.strong_on[k] = true;
    } else {
      Ordering ord = inst.compare(w, e, at[w]);
      rep.weak_on[k] = ord != Ordering::Worse;
      rep.strong_on[k] = ord == Ordering::Better;
    }
  }
  rep.blocks = rep.weak_on[0] && rep.weak_on[1] && (rep.strong_on[0] || rep.strong_on[1]);
  return rep;
}

std::optional<EdgeId> strongly_stable(const Instance& inst, const Matching& mu) {
  if (!is_matching(inst, mu.edges)) {
    throw VerifyError(VerifyError::Kind::NotAMatching, "edges share a vertex");
  }
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (std::find(mu.edges.begin(), mu.edges.end(), e) != mu.edges.end()) continue;
    if (blocks(inst, mu, e).blocks) return e;
  }
  return std::nullopt;
}

}  // namespace sr
