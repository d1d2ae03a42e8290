#include "rbcsp/generator.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace detail {

std::vector<std::uint64_t> floyd_sample(Xoshiro256& rng, std::uint64_t universe,
                                        std::uint64_t q) {
  std::vector<std::uint64_t> picked;
  picked.reserve(q);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(q * 2);
  for (std::uint64_t j = universe - q; j < universe; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t chosen = seen.contains(t) ? j : t;
    seen.insert(chosen);
    picked.push_back(chosen);
  }
  return picked;
}

}  // namespace detail

CspInstance generate(const GenRequest& request) {
  const CspParams& params = request.params;
  const DerivedSizes sizes = derive_sizes(params);
  const auto space = static_cast<std::uint64_t>(sizes.tuple_space);

  if (request.forced) {
    if (params.model == ModelKind::RB && sizes.q >= sizes.tuple_space)
      throw ForcedInfeasibleError("forced RB instance needs q <= d^k - 1");
    if (params.model == ModelKind::RD && params.p >= 1.0)
      throw ForcedInfeasibleError("forced RD instance needs p < 1");
  }
  if (params.model == ModelKind::RD && space > (std::uint64_t{1} << 26))
    throw SizeError("RD generation flips one coin per tuple; d^k too large");

  Xoshiro256 rng(request.seed);

  std::optional<Assignment> hidden;
  if (request.forced) {
    Assignment t;
    t.values.resize(params.n);
    for (auto& v : t.values) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(sizes.d)));
    hidden = std::move(t);
  }

  const auto m = static_cast<std::size_t>(sizes.m);
  std::vector<std::vector<int>> scopes(m);
  std::vector<int> vars(params.n);
  std::iota(vars.begin(), vars.end(), 0);
  for (auto& scope : scopes) {
    for (int i = 0; i < params.k; ++i) {
      const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(params.n - i)));
      std::swap(vars[i], vars[j]);
    }
    scope.assign(vars.begin(), vars.begin() + params.k);
    std::sort(scope.begin(), scope.end());
  }

  std::vector<Constraint> constraints;
  constraints.reserve(m);
  std::vector<int> projection(params.k);
  for (const auto& scope : scopes) {
    std::optional<TupleRank> excluded;
    if (hidden) {
      for (int j = 0; j < params.k; ++j) projection[j] = (*hidden)[scope[j]];
      excluded = tuple_rank(projection, sizes.d);
    }

    std::vector<TupleRank> ranks;
    if (params.model == ModelKind::RB) {
      const std::uint64_t universe = excluded ? space - 1 : space;
      ranks = detail::floyd_sample(rng, universe, static_cast<std::uint64_t>(sizes.q));
      if (excluded)
        for (auto& r : ranks)
          if (r >= *excluded) ++r;
    } else {
      for (TupleRank r = 0; r < space; ++r) {
        if (excluded && r == *excluded) continue;
        if (rng.bernoulli(params.p)) ranks.push_back(r);
      }
    }
    constraints.emplace_back(scope, std::move(ranks), params.n, sizes.d);
  }

  return CspInstance(params, std::move(constraints), request.seed, std::move(hidden));
}

}  // namespace rbcsp
