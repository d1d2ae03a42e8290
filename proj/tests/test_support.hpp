#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rbcsp/instance.hpp"
#include "rbcsp/params.hpp"

namespace rbcsp::testing {

// Parameters whose derived sizes are exactly (d, m).
inline CspParams params_for(ModelKind model, int k, int n, int d, int m, double p) {
  CspParams params;
  params.model = model;
  params.k = k;
  params.n = n;
  params.alpha = std::log(static_cast<double>(d)) / std::log(static_cast<double>(n));
  params.r = static_cast<double>(m) / (n * std::log(static_cast<double>(n)));
  params.p = p;
  return params;
}

// Two variables, d = 2, one RB constraint on (0, 1) forbidding (0, 1).
inline CspInstance two_variable_instance() {
  const CspParams params = params_for(ModelKind::RB, 2, 2, 2, 1, 0.25);
  std::vector<Constraint> constraints;
  constraints.emplace_back(std::vector<int>{0, 1}, std::vector<TupleRank>{1}, 2, 2);
  return CspInstance(params, std::move(constraints), 0);
}

// Independent brute-force satisfiability count.
inline std::uint64_t brute_force_count(const CspInstance& instance) {
  const int n = instance.num_vars();
  const int d = static_cast<int>(instance.domain_size());
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(d);
  std::uint64_t count = 0;
  std::vector<int> values(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      values[i] = static_cast<int>(c % d);
      c /= d;
    }
    bool ok = true;
    for (const auto& constraint : instance.constraints()) {
      std::vector<int> tuple;
      for (int u : constraint.scope()) tuple.push_back(values[u]);
      for (TupleRank rank : constraint.incompatible()) {
        if (tuple_from_rank(rank, static_cast<int>(tuple.size()), d) == tuple) ok = false;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace rbcsp::testing
