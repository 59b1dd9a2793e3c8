#pragma once

#include "sr/instance.hpp"
#include "sr/rational.hpp"

#include <cstdint>

namespace sr {

/**
 * Seeded random instance on agents a0..a{n-1}: every pair becomes an edge
 * with probability edge_prob; each agent ranks its incident edges by a
 * uniformly random permutation, then each adjacent pair of ranks is merged
 * into a tie with probability tie_prob. All randomness comes from the
 * counter-based SplitMix64 stream, so a seed pins the instance down to the
 * byte on every platform. tie_prob = 0 yields strict preferences.
 */
Instance random_instance(int n, const Rat& edge_prob, const Rat& tie_prob, std::uint64_t seed);

}  // namespace sr
