#include "sr/generator.hpp"

#include "sr/prng.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

Instance random_instance(int n, const Rat& edge_prob, const Rat& tie_prob, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_instance needs n >= 1");
  if (edge_prob < 0 || edge_prob > 1 || tie_prob < 0 || tie_prob > 1) {
    throw std::invalid_argument("probabilities must lie in [0, 1]");
  }
  SplitMix64 rng(seed);

  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) names.push_back("a" + std::to_string(v));

  // edge selection in fixed (u, v) order
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.bernoulli(edge_prob)) adjacent[u][v] = adjacent[v][u] = 1;
    }
  }

  std::vector<std::vector<std::vector<VertexId>>> groups(n);
  for (int v = 0; v < n; ++v) {
    std::vector<VertexId> partners;
    for (int w = 0; w < n; ++w) {
      if (adjacent[v][w]) partners.push_back(w);
    }
    // Fisher-Yates on the partner list
    for (int i = static_cast<int>(partners.size()) - 1; i > 0; --i) {
      std::swap(partners[i], partners[rng.below(i + 1)]);
    }
    // merge adjacent ranks into ties
    for (size_t i = 0; i < partners.size(); ++i) {
      if (i == 0 || !rng.bernoulli(tie_prob)) {
        groups[v].push_back({});
      }
      groups[v].back().push_back(partners[i]);
    }
  }
  return Instance::build(std::move(names), groups);
}

}  // namespace sr
