#pragma once

#include "sr/instance.hpp"

#include <optional>
#include <stdexcept>

namespace sr {

struct VerifyError : std::runtime_error {
  enum class Kind { UnknownEdge, EdgeInMatching, NotAMatching };
  VerifyError(Kind k, const std::string& message) : std::runtime_error(message), kind(k) {}
  Kind kind;
};

/// Per-endpoint blocking report for an edge against a matching.
struct BlockReport {
  // indexed like the edge endpoints: [0] = smaller vertex id, [1] = larger
  bool weak_on[2] = {false, false};    // e >=_v mu(v)
  bool strong_on[2] = {false, false};  // e >_v mu(v)
  bool blocks = false;                 // weak on both, strong on at least one
};

/// True iff the edges are pairwise vertex-disjoint.
bool is_matching(const Instance& inst, const std::vector<EdgeId>& edges);

/// Evaluates the blocking definition for e (must not be in mu) against mu.
/// An unmatched endpoint compares as worse than any incident edge.
BlockReport blocks(const Instance& inst, const Matching& mu, EdgeId e);

/// std::nullopt iff mu is strongly stable; otherwise the lowest-id blocking
/// edge. Throws NotAMatching when mu is not a matching.
std::optional<EdgeId> strongly_stable(const Instance& inst, const Matching& mu);

}  // namespace sr
