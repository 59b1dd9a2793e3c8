#include "sr/polytope.hpp"

#include "sr/log.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>

namespace sr {

EdgeVector characteristic_vector(const Instance& inst, const Matching& mu) {
  EdgeVector x(inst.num_edges());
  for (EdgeId e : mu.edges) x[e] = 1;
  return x;
}

std::vector<EdgeId> OddSetCut::interior_edges(const Instance& inst) const {
  std::vector<char> in(inst.num_vertices(), 0);
  for (VertexId v : vertices) in[v] = 1;
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    if (in[u] && in[v]) out.push_back(e);
  }
  return out;
}

Rat OddSetCut::violation(const Instance& inst, const EdgeVector& x) const {
  return x.sum(interior_edges(inst)) - rhs();
}

std::string OddSetCut::describe(const Instance& inst, const EdgeVector& x) const {
  std::ostringstream out;
  out << "cut: {";
  for (size_t i = 0; i < vertices.size(); ++i) {
    out << (i ? " " : "") << inst.name(vertices[i]);
  }
  out << "} lhs=" << rat_to_string(x.sum(interior_edges(inst))) << " rhs=" << rat_to_string(rhs());
  return out.str();
}

std::vector<LpRow> base_rows(const Instance& inst, const std::vector<bool>& allowed) {
  std::vector<LpRow> rows;
  // (i) degree rows
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    LpRow row;
    for (EdgeId e : inst.incident_edges(v)) row.coeffs.emplace_back(e, 1);
    row.rel = Relation::LessEq;
    row.rhs = 1;
    rows.push_back(std::move(row));
  }
  // (ii) stability rows, one per (edge, endpoint)
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    for (VertexId side : {u, v}) {
      std::vector<Rat> dense(inst.num_edges(), Rat(0));
      for (EdgeId f : inst.relation_set(side, e, RelationMode::Equal)) dense[f] += 1;
      for (VertexId w : {u, v}) {
        for (EdgeId f : inst.relation_set(w, e, RelationMode::StrictAbove)) dense[f] += 1;
      }
      LpRow row;
      for (EdgeId f = 0; f < inst.num_edges(); ++f) {
        if (dense[f] != 0) row.coeffs.emplace_back(f, dense[f]);
      }
      row.rel = Relation::GreaterEq;
      row.rhs = 1;
      rows.push_back(std::move(row));
    }
  }
  // (iii) forced zeros outside the allowed set
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (!allowed[e]) {
      LpRow row;
      row.coeffs.emplace_back(e, 1);
      row.rel = Relation::Eq;
      row.rhs = 0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

LpRow cut_row(const Instance& inst, const OddSetCut& cut) {
  LpRow row;
  for (EdgeId e : cut.interior_edges(inst)) row.coeffs.emplace_back(e, 1);
  row.rel = Relation::LessEq;
  row.rhs = cut.rhs();
  return row;
}

std::optional<OddSetCut> separate_exhaustive(const Instance& inst, const EdgeVector& x,
                                             int vertex_cap) {
  const int n = inst.num_vertices();
  if (n > vertex_cap) {
    throw PolytopeError(PolytopeError::Kind::TooLarge,
                        "exhaustive separation over " + std::to_string(n) +
                            " vertices exceeds cap " + std::to_string(vertex_cap));
  }
  std::optional<OddSetCut> best;
  Rat best_violation = 0;
  std::vector<std::pair<VertexId, VertexId>> ends(inst.num_edges());
  for (EdgeId e = 0; e < inst.num_edges(); ++e) ends[e] = inst.endpoints(e);

  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    int size = __builtin_popcountl(mask);
    if (size < 3 || size % 2 == 0) continue;
    Rat inside = 0;
    for (EdgeId e = 0; e < inst.num_edges(); ++e) {
      if (x[e] != 0 && (mask >> ends[e].first & 1) && (mask >> ends[e].second & 1)) {
        inside += x[e];
      }
    }
    Rat violation = inside - Rat(size / 2);
    if (violation <= 0) continue;
    if (!best || violation > best_violation) {
      best_violation = violation;
      OddSetCut cut;
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1) cut.vertices.push_back(v);
      }
      best = std::move(cut);
    } else if (violation == best_violation) {
      std::vector<VertexId> seq;
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1) seq.push_back(v);
      }
      if (seq < best->vertices) best->vertices = std::move(seq);
    }
  }
  return best;
}

namespace {

struct FlowArc {
  int to;
  Rat residual;
  int rev;  // index of the reverse arc in graph[to]
};

struct FlowGraph {
  std::vector<std::vector<FlowArc>> adj;

  explicit FlowGraph(int n) : adj(n) {}

  void add_undirected(int u, int v, const Rat& cap) {
    adj[u].push_back({v, cap, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, cap, static_cast<int>(adj[u].size()) - 1});
  }

  // BFS parent arcs from s toward t over positive residuals.
  bool shortest_path(int s, int t, std::vector<std::pair<int, int>>& parent) {
    parent.assign(adj.size(), {-1, -1});
    parent[s] = {s, -1};
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      if (u == t) return true;
      for (int k = 0; k < static_cast<int>(adj[u].size()); ++k) {
        const FlowArc& arc = adj[u][k];
        if (arc.residual > 0 && parent[arc.to].first < 0) {
          parent[arc.to] = {u, k};
          queue.push_back(arc.to);
        }
      }
    }
    return false;
  }
};

}  // namespace

MaxFlowResult max_flow_min_cut(int num_nodes, const std::vector<CapacityEdge>& edges, int s,
                               int t) {
  assert(s != t && s >= 0 && t >= 0 && s < num_nodes && t < num_nodes);
  // merge parallel entries; drop self-loops, which never cross a cut
  std::map<std::pair<int, int>, Rat> merged;
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    assert(e.cap >= 0);
    merged[std::minmax(e.u, e.v)] += e.cap;
  }
  FlowGraph graph(num_nodes);
  for (const auto& [uv, cap] : merged) graph.add_undirected(uv.first, uv.second, cap);

  Rat flow = 0;
  std::vector<std::pair<int, int>> parent;
  while (graph.shortest_path(s, t, parent)) {
    Rat bottleneck = -1;
    for (int v = t; v != s;) {
      auto [u, k] = parent[v];
      const Rat& residual = graph.adj[u][k].residual;
      if (bottleneck < 0 || residual < bottleneck) bottleneck = residual;
      v = u;
    }
    if (bottleneck == 0) break;  // t reachable only through saturated arcs cannot happen
    for (int v = t; v != s;) {
      auto [u, k] = parent[v];
      FlowArc& arc = graph.adj[u][k];
      arc.residual -= bottleneck;
      graph.adj[arc.to][arc.rev].residual += bottleneck;
      v = u;
    }
    flow += bottleneck;
  }

  MaxFlowResult result;
  result.value = flow;
  std::vector<char> reach(num_nodes, 0);
  std::deque<int> queue{s};
  reach[s] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const FlowArc& arc : graph.adj[u]) {
      if (arc.residual > 0 && !reach[arc.to]) {
        reach[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  for (int v = 0; v < num_nodes; ++v) {
    if (reach[v]) result.source_side.push_back(v);
  }
  return result;
}

Rat GomoryHuTree::min_cut_value(int u, int v) const {
  // BFS over the tree, tracking the minimum weight on the path
  int n = 0;
  for (const auto& e : edges) n = std::max({n, e.u + 1, e.v + 1});
  n = std::max({n, u + 1, v + 1});
  std::vector<std::vector<std::pair<int, Rat>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<char> seen(n, 0);
  std::vector<Rat> best(n, 0);
  std::deque<int> queue{u};
  seen[u] = 1;
  best[u] = -1;  // sentinel: no edge yet
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    for (const auto& [b, w] : adj[a]) {
      if (seen[b]) continue;
      seen[b] = 1;
      best[b] = (best[a] < 0 || w < best[a]) ? w : best[a];
      queue.push_back(b);
    }
  }
  assert(seen[v]);
  return best[v];
}

std::vector<int> GomoryHuTree::fundamental_side(int num_nodes, int k) const {
  std::vector<std::vector<int>> adj(num_nodes);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (i == k) continue;
    adj[edges[i].u].push_back(edges[i].v);
    adj[edges[i].v].push_back(edges[i].u);
  }
  std::vector<char> seen(num_nodes, 0);
  std::deque<int> queue{edges[k].u};
  seen[edges[k].u] = 1;
  std::vector<int> side;
  while (!queue.empty()) {
    int a = queue.front();
    queue.pop_front();
    side.push_back(a);
    for (int b : adj[a]) {
      if (!seen[b]) {
        seen[b] = 1;
        queue.push_back(b);
      }
    }
  }
  std::sort(side.begin(), side.end());
  return side;
}

GomoryHuTree gomory_hu_tree(int num_nodes, const std::vector<CapacityEdge>& edges) {
  GomoryHuTree tree;
  if (num_nodes <= 1) return tree;

  // supernode partition plus a tree over group indices
  std::vector<std::vector<int>> groups{std::vector<int>(num_nodes)};
  for (int v = 0; v < num_nodes; ++v) groups[0][v] = v;
  struct GroupEdge {
    int a, b;
    Rat weight;
  };
  std::vector<GroupEdge> group_tree;

  for (;;) {
    int g = -1;
    for (int i = 0; i < static_cast<int>(groups.size()); ++i) {
      if (groups[i].size() >= 2) {
        g = i;
        break;
      }
    }
    if (g < 0) break;
    const int s = groups[g][0];
    const int t = groups[g][1];

    // components of the group tree with g removed
    std::vector<std::vector<int>> adj(groups.size());
    for (int i = 0; i < static_cast<int>(group_tree.size()); ++i) {
      adj[group_tree[i].a].push_back(i);
      adj[group_tree[i].b].push_back(i);
    }
    std::vector<int> comp_of(groups.size(), -1);
    int num_comps = 0;
    for (int start = 0; start < static_cast<int>(groups.size()); ++start) {
      if (start == g || comp_of[start] >= 0) continue;
      int c = num_comps++;
      std::deque<int> queue{start};
      comp_of[start] = c;
      while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        for (int ei : adj[a]) {
          int b = group_tree[ei].a == a ? group_tree[ei].b : group_tree[ei].a;
          if (b != g && comp_of[b] < 0) {
            comp_of[b] = c;
            queue.push_back(b);
          }
        }
      }
    }

    // contract each component to a single node; members of g stay distinct
    const int base = static_cast<int>(groups[g].size());
    std::vector<int> node_of(num_nodes, -1);
    for (int i = 0; i < base; ++i) node_of[groups[g][i]] = i;
    for (int h = 0; h < static_cast<int>(groups.size()); ++h) {
      if (h == g) continue;
      for (int v : groups[h]) node_of[v] = base + comp_of[h];
    }
    std::vector<CapacityEdge> contracted;
    for (const auto& e : edges) {
      int cu = node_of[e.u];
      int cv = node_of[e.v];
      if (cu != cv) contracted.push_back({cu, cv, e.cap});
    }
    MaxFlowResult cut = max_flow_min_cut(base + num_comps, contracted, node_of[s], node_of[t]);
    std::vector<char> on_s_side(base + num_comps, 0);
    for (int v : cut.source_side) on_s_side[v] = 1;

    // split g along the cut; s keeps index g, t moves to a fresh group
    std::vector<int> keep, move;
    for (int v : groups[g]) (on_s_side[node_of[v]] ? keep : move).push_back(v);
    const int fresh = static_cast<int>(groups.size());
    groups[g] = keep;
    groups.push_back(move);
    for (auto& e : group_tree) {
      int other = -1;
      if (e.a == g) other = e.b;
      else if (e.b == g) other = e.a;
      else continue;
      if (!on_s_side[base + comp_of[other]]) {
        (e.a == g ? e.a : e.b) = fresh;
      }
    }
    group_tree.push_back({g, fresh, cut.value});
  }

  for (const auto& e : group_tree) {
    tree.edges.push_back({groups[e.a][0], groups[e.b][0], e.weight});
  }
  return tree;
}

std::optional<OddSetCut> separate_padberg_rao(const Instance& inst, const EdgeVector& x) {
  const int n = inst.num_vertices();
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (x[e] < 0) {
      throw PolytopeError(PolytopeError::Kind::DegreeConstraintViolated,
                          "negative value on edge " + inst.edge_name(e));
    }
  }
  std::vector<Rat> slack(n);
  for (VertexId v = 0; v < n; ++v) {
    slack[v] = Rat(1) - x.vertex_load(inst, v);
    if (slack[v] < 0) {
      throw PolytopeError(PolytopeError::Kind::DegreeConstraintViolated,
                          "degree constraint violated at " + inst.name(v));
    }
  }
  if (n < 3) return std::nullopt;  // no odd set of size >= 3

  // auxiliary graph: V plus a root r; zero capacities are kept
  const int root = n;
  std::vector<CapacityEdge> caps;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    caps.push_back({u, v, x[e]});
  }
  for (VertexId v = 0; v < n; ++v) caps.push_back({v, root, slack[v]});

  // label set of even size: all of V, plus r when |V| is odd
  std::vector<char> labeled(n + 1, 0);
  for (int v = 0; v < n; ++v) labeled[v] = 1;
  if (n % 2 == 1) labeled[root] = 1;

  GomoryHuTree tree = gomory_hu_tree(n + 1, caps);
  std::optional<std::vector<int>> best_side;
  Rat best_value = 0;
  for (int k = 0; k < static_cast<int>(tree.edges.size()); ++k) {
    std::vector<int> side = tree.fundamental_side(n + 1, k);
    int label_count = 0;
    bool has_root = false;
    for (int v : side) {
      label_count += labeled[v];
      has_root |= (v == root);
    }
    if (label_count % 2 == 0) continue;
    if (has_root) {
      std::vector<char> in(n + 1, 0);
      for (int v : side) in[v] = 1;
      side.clear();
      for (int v = 0; v < n; ++v) {
        if (!in[v]) side.push_back(v);
      }
    }
    // direct capacity of the candidate cut: x(delta(X)) + slack(X)
    std::vector<char> in(n, 0);
    for (int v : side) in[v] = 1;
    Rat value = 0;
    for (EdgeId e = 0; e < inst.num_edges(); ++e) {
      auto [u, v] = inst.endpoints(e);
      if (in[u] != in[v]) value += x[e];
    }
    for (int v : side) value += slack[v];
    assert(value == tree.edges[k].weight);
    if (!best_side || value < best_value) {
      best_value = value;
      best_side = std::move(side);
    }
  }
  if (!best_side || best_value >= 1) return std::nullopt;
  assert(best_side->size() % 2 == 1 && best_side->size() >= 3);
  return OddSetCut{*best_side};
}

std::string Violation::describe(const Instance& inst) const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Negative:
      out << "negative value on " << inst.edge_name(edge);
      break;
    case Kind::Degree:
      out << "degree constraint at " << inst.name(vertex) << ": " << rat_to_string(lhs) << " > 1";
      break;
    case Kind::Stability:
      out << "stability constraint for (" << inst.edge_name(edge) << ", " << inst.name(vertex)
          << "): " << rat_to_string(lhs) << " < 1";
      break;
    case Kind::OddSet: {
      out << "odd-set constraint for {";
      for (size_t i = 0; i < cut.vertices.size(); ++i) {
        out << (i ? " " : "") << inst.name(cut.vertices[i]);
      }
      out << "}: " << rat_to_string(lhs) << " > " << rat_to_string(rhs);
      break;
    }
  }
  return out.str();
}

std::optional<Violation> check_membership(const Instance& inst, const EdgeVector& x,
                                          int exhaustive_cap) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (x[e] < 0) {
      Violation v;
      v.kind = Violation::Kind::Negative;
      v.edge = e;
      v.lhs = x[e];
      return v;
    }
  }
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    Rat load = x.vertex_load(inst, v);
    if (load > 1) {
      Violation viol;
      viol.kind = Violation::Kind::Degree;
      viol.vertex = v;
      viol.lhs = load;
      viol.rhs = 1;
      return viol;
    }
  }
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    for (VertexId side : {u, v}) {
      Rat lhs = x.sum(inst.relation_set(side, e, RelationMode::Equal));
      for (VertexId w : {u, v}) lhs += x.sum(inst.relation_set(w, e, RelationMode::StrictAbove));
      if (lhs < 1) {
        Violation viol;
        viol.kind = Violation::Kind::Stability;
        viol.edge = e;
        viol.vertex = side;
        viol.lhs = lhs;
        viol.rhs = 1;
        return viol;
      }
    }
  }
  std::optional<OddSetCut> cut = (inst.num_vertices() <= exhaustive_cap)
                                     ? separate_exhaustive(inst, x, exhaustive_cap)
                                     : separate_padberg_rao(inst, x);
  if (cut) {
    Violation viol;
    viol.kind = Violation::Kind::OddSet;
    viol.lhs = x.sum(cut->interior_edges(inst));
    viol.rhs = cut->rhs();
    viol.cut = std::move(*cut);
    return viol;
  }
  return std::nullopt;
}

RestrictedPolytope::RestrictedPolytope(const Instance& inst, PolytopeOptions options)
    : RestrictedPolytope(inst, std::vector<bool>(inst.num_edges(), true), options) {}

RestrictedPolytope::RestrictedPolytope(const Instance& inst, std::vector<bool> allowed,
                                       PolytopeOptions options)
    : inst_(&inst), allowed_(std::move(allowed)), options_(options) {
  assert(static_cast<int>(allowed_.size()) == inst.num_edges());
  if (options_.cut_limit < 0) options_.cut_limit = default_cut_limit(inst);
}

void RestrictedPolytope::restrict_to(std::vector<bool> allowed) {
  assert(static_cast<int>(allowed.size()) == inst_->num_edges());
  allowed_ = std::move(allowed);
}

std::optional<OddSetCut> RestrictedPolytope::separate(const EdgeVector& x) const {
  switch (options_.separation) {
    case SeparationMode::PadbergRao:
      return separate_padberg_rao(*inst_, x);
    case SeparationMode::Exhaustive:
      return separate_exhaustive(*inst_, x);
    case SeparationMode::Both: {
      auto pr = separate_padberg_rao(*inst_, x);
      auto ex = separate_exhaustive(*inst_, x);
      if (pr.has_value() != ex.has_value()) {
        throw PolytopeError(PolytopeError::Kind::SeparationMismatch,
                            "padberg-rao and exhaustive separation disagree");
      }
      return pr;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<EdgeVector, Rat>> RestrictedPolytope::optimize(
    const std::vector<std::pair<EdgeId, Rat>>& objective, Sense sense) {
  LinearProgram lp;
  lp.num_vars = inst_->num_edges();
  lp.rows = base_rows(*inst_, allowed_);
  for (const OddSetCut& cut : cuts_) lp.rows.push_back(cut_row(*inst_, cut));
  lp.objective = objective;
  lp.sense = sense;

  for (;;) {
    LpOutcome out = solve_lp(lp, options_.pivot_limit);
    if (out.status == LpOutcome::Status::Infeasible) return std::nullopt;
    if (out.status != LpOutcome::Status::Optimal) {
      throw std::logic_error("polytope LP cannot be unbounded; solver disagrees");
    }
    EdgeVector x;
    x.values = std::move(out.point);
    std::optional<OddSetCut> cut = separate(x);
    if (!cut) return std::make_pair(std::move(x), std::move(out.value));
    if (static_cast<long>(cuts_.size()) >= options_.cut_limit) {
      throw PolytopeError(PolytopeError::Kind::CutLimitExceeded,
                          "odd-set cut limit (" + std::to_string(options_.cut_limit) +
                              ") exceeded");
    }
    log::debug(cut->describe(*inst_, x));
    lp.rows.push_back(cut_row(*inst_, *cut));
    cuts_.push_back(std::move(*cut));
  }
}

}  // namespace sr
