#include "sr/algorithm.hpp"

#include "sr/prng.hpp"

#include <algorithm>
#include <sstream>

namespace sr {

std::vector<EdgeId> support(const EdgeVector& x) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < x.size(); ++e) {
    if (x[e] > 0) out.push_back(e);
  }
  return out;
}

std::vector<VertexId> active_vertices(const Instance& inst, const EdgeVector& x) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < inst.num_vertices(); ++v) {
    if (x.vertex_load(inst, v) > 0) out.push_back(v);
  }
  return out;
}

BWSets bw_sets(const Instance& inst, const EdgeVector& x) {
  const int n = inst.num_vertices();
  BWSets bw;
  bw.best.resize(n);
  bw.worst.resize(n);
  bw.active.assign(n, false);
  for (VertexId v = 0; v < n; ++v) {
    int best_rank = -1;
    int worst_rank = -1;
    for (EdgeId e : inst.incident_edges(v)) {
      if (x[e] <= 0) continue;
      int r = inst.rank(v, e);
      if (best_rank < 0 || r < best_rank) best_rank = r;
      if (worst_rank < 0 || r > worst_rank) worst_rank = r;
    }
    if (best_rank < 0) continue;
    bw.active[v] = true;
    for (EdgeId e : inst.incident_edges(v)) {
      if (x[e] <= 0) continue;
      int r = inst.rank(v, e);
      if (r == best_rank) bw.best[v].push_back(e);
      if (r == worst_rank) bw.worst[v].push_back(e);
    }
  }
  return bw;
}

std::vector<EdgeId> tier_set(const Instance& inst, const EdgeVector& x) {
  BWSets bw = bw_sets(inst, x);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    auto [u, v] = inst.endpoints(e);
    if (!bw.active[u] || !bw.active[v]) continue;
    bool ok = true;
    for (VertexId w : {u, v}) {
      int r = inst.rank(w, e);
      int best_rank = inst.rank(w, bw.best[w].front());
      int worst_rank = inst.rank(w, bw.worst[w].front());
      bool in_best_or_worst = x[e] > 0 && (r == best_rank || r == worst_rank);
      bool strictly_between = best_rank < r && r < worst_rank;
      if (!in_best_or_worst && !strictly_between) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(e);
  }
  return out;
}

namespace {

const char* branch_label(IterationRecord::Branch b) {
  switch (b) {
    case IterationRecord::Branch::Max: return "max";
    case IterationRecord::Branch::Min: return "min";
    case IterationRecord::Branch::No: return "no";
  }
  return "?";
}

// Lowest-id default, or uniform among the candidates when seeded.
template <typename T>
T pick(const std::vector<T>& candidates, SplitMix64* rng) {
  if (rng) return candidates[rng->below(candidates.size())];
  return candidates.front();
}

}  // namespace

SolveOutcome run(const Instance& inst, const RunOptions& options) {
  PolytopeOptions popts;
  popts.separation = options.separation;
  popts.cut_limit = options.cut_limit;
  popts.pivot_limit = options.pivot_limit;
  RestrictedPolytope poly(inst, popts);

  std::vector<std::pair<EdgeId, Rat>> everything;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) everything.emplace_back(e, 1);

  SolveOutcome outcome;
  auto z1 = poly.optimize(everything, Sense::Maximize);
  if (!z1) {
    outcome.status = SolveOutcome::Status::PolytopeEmpty;
    return outcome;
  }
  EdgeVector z = std::move(z1->first);
  if (options.on_point) options.on_point(1, z);

  std::optional<SplitMix64> rng;
  if (options.tie_seed) rng.emplace(*options.tie_seed);
  SplitMix64* rng_ptr = rng ? &*rng : nullptr;

  for (int t = 1;; ++t) {
    std::vector<EdgeId> z_support = support(z);
    std::vector<EdgeId> fractional;
    for (EdgeId e : z_support) {
      if (z[e] != 1) fractional.push_back(e);
    }
    if (fractional.empty()) {
      Matching mu;
      mu.edges = z_support;  // all values are exactly 1
      outcome.status = SolveOutcome::Status::Yes;
      outcome.matching = std::move(mu);
      return outcome;
    }

    IterationRecord rec;
    rec.t = t;
    rec.z_support = z_support;
    rec.f = pick(fractional, rng_ptr);
    auto [fu, fv] = inst.endpoints(rec.f);
    rec.v = pick(std::vector<VertexId>{fu, fv}, rng_ptr);
    BWSets bw = bw_sets(inst, z);
    rec.g = pick(bw.worst[rec.v], rng_ptr);

    std::vector<EdgeId> tier = tier_set(inst, z);
    rec.tier_size = static_cast<int>(tier.size());
    std::vector<bool> allowed(inst.num_edges(), false);
    for (EdgeId e : tier) allowed[e] = true;
    poly.restrict_to(std::move(allowed));

    const std::vector<std::pair<EdgeId, Rat>> goal{{rec.g, Rat(1)}};
    auto max_out = poly.optimize(goal, Sense::Maximize);
    if (!max_out) {
      throw AlgorithmError("tier-restricted polytope is empty although z_t lies in it");
    }
    if (max_out->first[rec.g] == 1) {
      z = std::move(max_out->first);
      rec.branch = IterationRecord::Branch::Max;
    } else {
      auto min_out = poly.optimize(goal, Sense::Minimize);
      if (!min_out) {
        throw AlgorithmError("tier-restricted polytope is empty although z_t lies in it");
      }
      if (min_out->first[rec.g] == 0) {
        z = std::move(min_out->first);
        rec.branch = IterationRecord::Branch::Min;
      } else {
        rec.branch = IterationRecord::Branch::No;
        outcome.trace.push_back(std::move(rec));
        outcome.status = SolveOutcome::Status::No;
        return outcome;
      }
    }
    outcome.trace.push_back(std::move(rec));
    if (options.on_point) options.on_point(t + 1, z);
  }
}

std::string trace_to_string(const Instance& inst, const std::vector<IterationRecord>& trace) {
  std::ostringstream out;
  for (const IterationRecord& rec : trace) {
    out << "t=" << rec.t << " f=" << inst.edge_name(rec.f) << " v=" << inst.name(rec.v)
        << " g=" << inst.edge_name(rec.g) << " branch=" << branch_label(rec.branch)
        << " |T|=" << rec.tier_size << '\n';
  }
  return out.str();
}

}  // namespace sr
