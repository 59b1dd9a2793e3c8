#pragma once

#include "sr/instance.hpp"
#include "sr/polytope.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

/// A condition the solver's own invariants rule out held anyway; always an
/// implementation bug, never a problem answer.
struct AlgorithmError : std::runtime_error {
  explicit AlgorithmError(const std::string& message) : std::runtime_error(message) {}
};

/// E_x: edges with strictly positive value.
std::vector<EdgeId> support(const EdgeVector& x);

/// Vertices with positive fractional degree. For a point of the polytope
/// this is the same vertex set V1 no matter which point is supplied, since
/// every point has full degree on it.
std::vector<VertexId> active_vertices(const Instance& inst, const EdgeVector& x);

/// Best/worst support-edge tiers per active vertex. Both tiers are flat
/// (mutually tied) and nonempty exactly on the active vertices.
struct BWSets {
  std::vector<std::vector<EdgeId>> best;   // indexed by vertex; empty if inactive
  std::vector<std::vector<EdgeId>> worst;
  std::vector<bool> active;
};
BWSets bw_sets(const Instance& inst, const EdgeVector& x);

/// T_x: edges between active vertices that lie, at each endpoint, in the
/// best or worst support tier or strictly between them. Always contains the
/// support of x.
std::vector<EdgeId> tier_set(const Instance& inst, const EdgeVector& x);

struct IterationRecord {
  int t = 0;
  std::vector<EdgeId> z_support;
  EdgeId f = -1;       // chosen fractional support edge
  VertexId v = -1;     // chosen endpoint of f
  EdgeId g = -1;       // chosen worst-tier edge at v
  enum class Branch { Max, Min, No } branch = Branch::No;
  int tier_size = 0;   // |T_{z_t}|
};

struct SolveOutcome {
  enum class Status { Yes, No, PolytopeEmpty };
  Status status = Status::No;
  std::optional<Matching> matching;  // set iff Yes
  std::vector<IterationRecord> trace;

  bool exists() const { return status == Status::Yes; }
};

struct RunOptions {
  SeparationMode separation = SeparationMode::PadbergRao;
  long cut_limit = -1;  // -1: default_cut_limit(inst)
  long pivot_limit = kDefaultPivotLimit;
  /// When set, f/v/g are drawn uniformly among the admissible choices with
  /// this seed instead of the default lowest-id rule. The Yes/No answer is
  /// invariant under any admissible tie-breaking.
  std::optional<std::uint64_t> tie_seed;
  /// Observer for each accepted point z_t (t starting at 1), test hook.
  std::function<void(int t, const EdgeVector& z)> on_point;
};

/**
 * Decides whether a strongly stable matching exists, returning one when it
 * does. Iteratively rounds a point of the polytope: while some support edge
 * is fractional, pick a worst-tier edge g at an endpoint and force x(g) to
 * 1 (max branch) or 0 (min branch) over the polytope restricted to the tier
 * set; if neither bound is attained, no strongly stable matching exists.
 * The tier set shrinks strictly every iteration, so at most |E| iterations
 * run. PolytopeEmpty also certifies non-existence.
 */
SolveOutcome run(const Instance& inst, const RunOptions& options = {});

/// One line per iteration: "t=1 f=a-b v=a g=a-c branch=max |T|=4".
std::string trace_to_string(const Instance& inst, const std::vector<IterationRecord>& trace);

}  // namespace sr
