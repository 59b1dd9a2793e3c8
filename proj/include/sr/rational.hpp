#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace sr {

// Exact arbitrary-precision rational scalar. Every quantity on the decision
// path (LP data, polytope points, cut values) is a Rat; there is no floating
// point anywhere in the solver. GMP keeps values canonical: denominator > 0,
// fraction in lowest terms.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Renders "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) { return r.str(); }

/// Parses "p", "-p" or "p/q" (q > 0). Decimal notation is rejected.
std::optional<Rat> rat_from_string(const std::string& text);

/// True iff r is 0 or 1.
inline bool is_binary(const Rat& r) { return r == 0 || r == 1; }

}  // namespace sr
