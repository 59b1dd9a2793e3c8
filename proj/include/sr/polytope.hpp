#pragma once

#include "sr/instance.hpp"
#include "sr/lp.hpp"
#include "sr/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

struct PolytopeError : std::runtime_error {
  enum class Kind { TooLarge, DegreeConstraintViolated, CutLimitExceeded, SeparationMismatch };
  PolytopeError(Kind k, const std::string& message) : std::runtime_error(message), kind(k) {}
  Kind kind;
};

/// Candidate point: one non-negative rational per edge (dense, default 0).
struct EdgeVector {
  std::vector<Rat> values;

  EdgeVector() = default;
  explicit EdgeVector(int num_edges) : values(num_edges, Rat(0)) {}

  Rat& operator[](EdgeId e) { return values[e]; }
  const Rat& operator[](EdgeId e) const { return values[e]; }
  int size() const { return static_cast<int>(values.size()); }
  bool operator==(const EdgeVector&) const = default;

  /// Sum over a set of edges.
  Rat sum(const std::vector<EdgeId>& edges) const {
    Rat acc = 0;
    for (EdgeId e : edges) acc += values[e];
    return acc;
  }
  /// Fractional degree x(E(v)).
  Rat vertex_load(const Instance& inst, VertexId v) const {
    return sum(inst.incident_edges(v));
  }
  Rat total() const {
    Rat acc = 0;
    for (const Rat& r : values) acc += r;
    return acc;
  }
};

/// Characteristic vector of a matching.
EdgeVector characteristic_vector(const Instance& inst, const Matching& mu);

/// Odd vertex set X (|X| odd, >= 3) whose interior edges are capped at
/// floor(|X|/2).
struct OddSetCut {
  std::vector<VertexId> vertices;  // sorted

  bool operator==(const OddSetCut&) const = default;
  Rat rhs() const { return Rat(static_cast<int>(vertices.size()) / 2); }
  /// Interior edge set E<X>.
  std::vector<EdgeId> interior_edges(const Instance& inst) const;
  /// x(E<X>) - floor(|X|/2); positive iff the cut is violated by x.
  Rat violation(const Instance& inst, const EdgeVector& x) const;
  std::string describe(const Instance& inst, const EdgeVector& x) const;
};

/**
 * Emits the degree and stability rows over variables x(e), e in E:
 *   (i)  x(E(v)) <= 1 for every vertex,
 *   (ii) x(E[~_v e]) + sum over endpoints w of x(E[>_w e]) >= 1
 *        for every edge e and endpoint v,
 *   (iii) x(e) = 0 for every edge outside `allowed`.
 * Odd-set inequalities are handled separately by the cutting-plane loop.
 */
std::vector<LpRow> base_rows(const Instance& inst, const std::vector<bool>& allowed);

/// LP row form of an odd-set cut.
LpRow cut_row(const Instance& inst, const OddSetCut& cut);

inline constexpr int kDefaultExhaustiveSeparationCap = 20;

/**
 * Most-violated odd-set inequality by direct enumeration of all odd vertex
 * subsets of size >= 3; ties go to the lexicographically smallest sorted
 * vertex sequence. Exponential in |V|, so guarded by a vertex cap.
 */
std::optional<OddSetCut> separate_exhaustive(const Instance& inst, const EdgeVector& x,
                                             int vertex_cap = kDefaultExhaustiveSeparationCap);

struct CapacityEdge {
  int u = 0;
  int v = 0;
  Rat cap = 0;
};

struct MaxFlowResult {
  Rat value = 0;
  std::vector<int> source_side;  // sorted node ids, contains s
};

/// Exact undirected max-flow / min-cut via shortest augmenting paths
/// (termination independent of capacity values). Parallel edges add up.
MaxFlowResult max_flow_min_cut(int num_nodes, const std::vector<CapacityEdge>& edges, int s,
                               int t);

struct GomoryHuTree {
  struct TreeEdge {
    int u = 0;
    int v = 0;
    Rat weight = 0;
  };
  std::vector<TreeEdge> edges;  // exactly num_nodes - 1 entries

  /// Minimum u-v cut value: smallest weight on the tree path.
  Rat min_cut_value(int u, int v) const;
  /// Node side of `edges[k]` containing `edges[k].u` when that edge is removed.
  std::vector<int> fundamental_side(int num_nodes, int k) const;
};

/**
 * Gomory-Hu cut tree by the classic splitting construction (n-1 max-flow
 * calls on contracted graphs). Fundamental cuts are genuine minimum cuts
 * with capacity equal to the tree-edge weight, which the odd-cut search
 * relies on; a merely flow-equivalent tree would not do.
 */
GomoryHuTree gomory_hu_tree(int num_nodes, const std::vector<CapacityEdge>& edges);

/**
 * Blossom-inequality separation via a minimum odd cut in the auxiliary
 * graph: capacities x(e) on edges plus slack 1 - x(E(v)) from each vertex
 * to an extra root r. Requires x >= 0 satisfying the degree rows. Singleton
 * cuts always have value exactly 1 and are never returned.
 */
std::optional<OddSetCut> separate_padberg_rao(const Instance& inst, const EdgeVector& x);

enum class SeparationMode { PadbergRao, Exhaustive, Both };

/// First constraint of P the vector violates: negativity, degree row,
/// stability row, or an odd-set inequality found by separation.
struct Violation {
  enum class Kind { Negative, Degree, Stability, OddSet };
  Kind kind = Kind::Negative;
  EdgeId edge = -1;      // Negative, Stability
  VertexId vertex = -1;  // Degree, Stability (the endpoint of the row)
  OddSetCut cut;         // OddSet
  Rat lhs = 0;
  Rat rhs = 0;
  std::string describe(const Instance& inst) const;
};

std::optional<Violation> check_membership(const Instance& inst, const EdgeVector& x,
                                          int exhaustive_cap = kDefaultExhaustiveSeparationCap);

/// Defensive bound on accumulated cuts: 10 |V|^2 unless overridden.
inline long default_cut_limit(const Instance& inst) {
  long n = inst.num_vertices();
  return 10 * n * n + 10;
}

struct PolytopeOptions {
  SeparationMode separation = SeparationMode::PadbergRao;
  long cut_limit = -1;    // -1: use default_cut_limit(inst)
  long pivot_limit = kDefaultPivotLimit;
};

/**
 * P(allowed): the polytope restricted to x(e) = 0 outside `allowed`,
 * optimized by a cutting-plane loop. Discovered odd-set cuts are valid for
 * the whole polytope, so they accumulate here and are reused across every
 * optimize() call of a solver run, including after re-restricting.
 */
class RestrictedPolytope {
 public:
  explicit RestrictedPolytope(const Instance& inst, PolytopeOptions options = {});
  RestrictedPolytope(const Instance& inst, std::vector<bool> allowed,
                     PolytopeOptions options = {});

  const Instance& instance() const { return *inst_; }
  const std::vector<bool>& allowed() const { return allowed_; }
  /// Narrows (or otherwise changes) the allowed edge set; cuts persist.
  void restrict_to(std::vector<bool> allowed);

  /**
   * Maximizes or minimizes the sparse objective over the restricted
   * polytope. Re-solves with the accumulated cuts, separating after each
   * optimum until no odd-set inequality is violated, so a returned point
   * lies in P(allowed) proper. Returns std::nullopt iff the polytope is
   * empty.
   */
  std::optional<std::pair<EdgeVector, Rat>> optimize(
      const std::vector<std::pair<EdgeId, Rat>>& objective, Sense sense);

  const std::vector<OddSetCut>& cuts() const { return cuts_; }

 private:
  std::optional<OddSetCut> separate(const EdgeVector& x) const;

  const Instance* inst_;
  std::vector<bool> allowed_;
  std::vector<OddSetCut> cuts_;
  PolytopeOptions options_;
};

}  // namespace sr
