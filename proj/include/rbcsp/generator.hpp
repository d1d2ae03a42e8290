#pragma once

#include <cstdint>
#include <vector>

#include "rbcsp/instance.hpp"
#include "rbcsp/params.hpp"
#include "rbcsp/rng.hpp"

namespace rbcsp {

struct GenRequest {
  CspParams params;
  std::uint64_t seed = 0;
  bool forced = false;
};

// Draws one Model RB / RD instance.
//
// Draw order, from a single Xoshiro256 seeded with `seed`:
//   1. forced only: the hidden assignment, values[0..n) each via below(d);
//   2. all m scopes, constraint by constraint: partial Fisher-Yates over a
//      persistent variable array (k draws), then sorted ascending;
//   3. all m incompatible sets, constraint by constraint:
//      RB: Floyd's algorithm drawing q distinct ranks out of d^k (or out of
//          d^k - 1 with the hidden tuple's rank skipped when forced);
//      RD: one bernoulli(p) per rank in ascending order (the hidden tuple's
//          rank is skipped, drawing nothing, when forced).
//
// Throws ParamRangeError from derive_sizes and ForcedInfeasibleError when a
// forced instance is requested with q = d^k (RB) or p = 1 (RD).
CspInstance generate(const GenRequest& request);

namespace detail {

// q distinct values drawn uniformly from [0, universe) by Floyd's algorithm.
// The result is in insertion order.
std::vector<std::uint64_t> floyd_sample(Xoshiro256& rng, std::uint64_t universe,
                                        std::uint64_t q);

}  // namespace detail

}  // namespace rbcsp
