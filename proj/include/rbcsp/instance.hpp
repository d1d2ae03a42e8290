#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbcsp/params.hpp"

namespace rbcsp {

using TupleRank = std::uint64_t;

// Row-major rank of a value tuple: sum of values[i] * d^(k-1-i).
TupleRank tuple_rank(std::span<const int> values, std::int64_t d);
// Inverse of tuple_rank for a tuple of length k.
std::vector<int> tuple_from_rank(TupleRank rank, int k, std::int64_t d);

// A total map from variables to domain values.
struct Assignment {
  std::vector<int> values;

  std::size_t size() const noexcept { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// A k-ary constraint given by its forbidden (incompatible) tuples.
//
// The scope is stored sorted ascending; incompatible tuples are stored as
// sorted distinct ranks. Membership is O(1) through a bitset when
// d^k <= 2^20 and a binary search otherwise.
class Constraint {
 public:
  Constraint() = default;
  // Throws ConsistencyError on a repeated or out-of-range scope variable, a
  // duplicated or out-of-range rank, or an unsorted scope.
  Constraint(std::vector<int> scope, std::vector<TupleRank> incompatible, int n,
             std::int64_t d);

  const std::vector<int>& scope() const noexcept { return scope_; }
  const std::vector<TupleRank>& incompatible() const noexcept { return ranks_; }
  std::size_t arity() const noexcept { return scope_.size(); }
  std::int64_t domain_size() const noexcept { return d_; }

  bool forbids(TupleRank rank) const;
  bool forbids(std::span<const int> values) const { return forbids(tuple_rank(values, d_)); }

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.d_ == b.d_ && a.scope_ == b.scope_ && a.ranks_ == b.ranks_;
  }

 private:
  std::vector<int> scope_;
  std::vector<TupleRank> ranks_;
  std::vector<std::uint64_t> bits_;
  std::int64_t d_ = 0;
};

class CspInstance {
 public:
  CspInstance() = default;

  // Validates every invariant: sizes equal derive_sizes(params), exactly m
  // constraints of arity k over n variables and d values, |incompatible| = q
  // for RB, and a forced assignment (if any) of length n that satisfies all
  // constraints. Throws ConsistencyError or ParamRangeError.
  CspInstance(CspParams params, std::vector<Constraint> constraints, std::uint64_t seed,
              std::optional<Assignment> forced = std::nullopt);

  const CspParams& params() const noexcept { return params_; }
  const DerivedSizes& sizes() const noexcept { return sizes_; }
  const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::optional<Assignment>& forced() const noexcept { return forced_; }

  int num_vars() const noexcept { return params_.n; }
  std::int64_t domain_size() const noexcept { return sizes_.d; }

  // Copy with the hidden assignment dropped.
  CspInstance without_hidden() const;

  friend bool operator==(const CspInstance&, const CspInstance&) = default;

 private:
  CspParams params_;
  DerivedSizes sizes_;
  std::vector<Constraint> constraints_;
  std::uint64_t seed_ = 0;
  std::optional<Assignment> forced_;
};

struct SatisfactionReport {
  bool satisfied = true;
  std::optional<std::size_t> violated;  // lowest violated constraint index
};

// Throws DimensionError if |t| != n or a value is outside [0, d).
SatisfactionReport check_assignment(const CspInstance& instance, const Assignment& t);

// Number of positions where the assignments agree.
int similarity(const Assignment& a, const Assignment& b);
// 1 - similarity / n.
double distance(const Assignment& a, const Assignment& b);

}  // namespace rbcsp
