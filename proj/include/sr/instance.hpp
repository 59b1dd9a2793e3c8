#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

// Dense indices. Vertices are 0..n-1 in declaration order, edges 0..m-1
// sorted by (min endpoint, max endpoint).
using VertexId = int;
using EdgeId = int;

/// Parse failure with the offending 1-based line number.
struct ParseError : std::runtime_error {
  enum class Kind {
    DuplicateAgent,
    UnknownPartner,
    AsymmetricListing,
    SelfLoop,
    DuplicatePartner,
    Syntax,
  };
  ParseError(Kind k, int line_no, const std::string& message);
  Kind kind;
  int line;
};

/// Query with an edge that is not incident to the given vertex.
struct NotIncidentError : std::runtime_error {
  NotIncidentError(VertexId v, EdgeId e);
};

enum class Ordering { Better, Equal, Worse };

// Which slice of E(v) relative to a reference edge relation_set returns.
enum class RelationMode { StrictAbove, Equal, WeakAbove, StrictBelow };

/// Set of pairwise vertex-disjoint edges (checked by verify::is_matching,
/// not enforced here).
struct Matching {
  std::vector<EdgeId> edges;  // sorted, unique

  bool operator==(const Matching&) const = default;
};

/**
 * A roommates instance with ties: a simple undirected graph where every
 * vertex ranks its incident edges by a non-negative integer rank
 * (smaller = preferred, equal = indifferent). Ranks induce a complete and
 * transitive preference relation by construction, and being unmatched is
 * implicitly worse than every incident edge.
 *
 * Immutable after construction; all queries are pure and thread-safe.
 */
class Instance {
 public:
  /// Builds and validates an instance from agent names and per-agent
  /// preference groups (partner vertex ids, best group first). Listings
  /// must be mutual; every pair {u,v} where u lists v and v lists u
  /// becomes an edge.
  static Instance build(std::vector<std::string> names,
                        const std::vector<std::vector<std::vector<VertexId>>>& pref_groups);

  int num_vertices() const { return static_cast<int>(names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& name(VertexId v) const { return names_[v]; }
  /// Vertex id for a display name, or -1 if unknown.
  VertexId vertex_by_name(const std::string& name) const;

  std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return edges_[e]; }
  VertexId other_endpoint(EdgeId e, VertexId v) const;
  bool incident(EdgeId e, VertexId v) const {
    return edges_[e].first == v || edges_[e].second == v;
  }
  /// Edge id joining u and v, or -1 if absent.
  EdgeId edge_between(VertexId u, VertexId v) const;
  /// "u-v" with display names, smaller endpoint first.
  std::string edge_name(EdgeId e) const;

  /// E(v), sorted by edge id. Empty for isolated vertices.
  const std::vector<EdgeId>& incident_edges(VertexId v) const { return incident_[v]; }

  /// rank(v, e); throws NotIncidentError when e is not incident to v.
  int rank(VertexId v, EdgeId e) const;

  /// Compares two edges incident to v: Better iff v strictly prefers e to f.
  Ordering compare(VertexId v, EdgeId e, EdgeId f) const;

  /// E[>_v e], E[~_v e], E[>=_v e] or E[e >_v], sorted by edge id.
  std::vector<EdgeId> relation_set(VertexId v, EdgeId e, RelationMode mode) const;

  /// Canonical text form; parse(serialize(inst)) reproduces the instance.
  std::string serialize() const;

 private:
  Instance() = default;

  std::vector<std::string> names_;
  std::vector<std::pair<VertexId, VertexId>> edges_;  // first < second
  std::vector<std::vector<EdgeId>> incident_;
  // rank_lo_[e]/rank_hi_[e]: rank of e at its smaller/larger endpoint.
  std::vector<int> rank_lo_;
  std::vector<int> rank_hi_;

  friend Instance parse_instance(const std::string&);
};

/**
 * Parses the line-oriented instance format:
 *
 *   agents: a b c
 *   prefs a: b
 *   prefs b: (a c)
 *   prefs c: b
 *
 * '#' starts a comment. Groups are listed best-to-worst; '( x y )' is a tie.
 * Every agent needs exactly one prefs line. An edge exists iff both
 * endpoints list each other; a one-sided listing is an error.
 */
Instance parse_instance(const std::string& text);

}  // namespace sr
