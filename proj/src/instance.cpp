#include "rbcsp/instance.hpp"

#include <algorithm>
#include <string>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace {

constexpr std::int64_t kBitsetLimit = std::int64_t{1} << 20;

void check_same_length(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size())
    throw DimensionError("assignment lengths differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
}

}  // namespace

TupleRank tuple_rank(std::span<const int> values, std::int64_t d) {
  TupleRank rank = 0;
  for (int v : values) rank = rank * static_cast<TupleRank>(d) + static_cast<TupleRank>(v);
  return rank;
}

std::vector<int> tuple_from_rank(TupleRank rank, int k, std::int64_t d) {
  std::vector<int> values(k);
  for (int i = k - 1; i >= 0; --i) {
    values[i] = static_cast<int>(rank % static_cast<TupleRank>(d));
    rank /= static_cast<TupleRank>(d);
  }
  return values;
}

Constraint::Constraint(std::vector<int> scope, std::vector<TupleRank> incompatible, int n,
                       std::int64_t d)
    : scope_(std::move(scope)), ranks_(std::move(incompatible)), d_(d) {
  for (std::size_t i = 0; i < scope_.size(); ++i) {
    if (scope_[i] < 0 || scope_[i] >= n)
      throw ConsistencyError("scope variable " + std::to_string(scope_[i]) + " out of range");
    if (i > 0 && scope_[i] <= scope_[i - 1])
      throw ConsistencyError("scope must be strictly ascending");
  }
  TupleRank space = 1;
  for (std::size_t i = 0; i < scope_.size(); ++i) space *= static_cast<TupleRank>(d);

  std::sort(ranks_.begin(), ranks_.end());
  if (std::adjacent_find(ranks_.begin(), ranks_.end()) != ranks_.end())
    throw ConsistencyError("duplicate incompatible tuple");
  if (!ranks_.empty() && ranks_.back() >= space)
    throw ConsistencyError("incompatible tuple out of range");

  if (space <= static_cast<TupleRank>(kBitsetLimit)) {
    bits_.assign((space + 63) / 64, 0);
    for (TupleRank r : ranks_) bits_[r / 64] |= std::uint64_t{1} << (r % 64);
  }
}

bool Constraint::forbids(TupleRank rank) const {
  if (!bits_.empty()) return (bits_[rank / 64] >> (rank % 64)) & 1U;
  return std::binary_search(ranks_.begin(), ranks_.end(), rank);
}

CspInstance::CspInstance(CspParams params, std::vector<Constraint> constraints,
                         std::uint64_t seed, std::optional<Assignment> forced)
    : params_(params),
      sizes_(derive_sizes(params)),
      constraints_(std::move(constraints)),
      seed_(seed),
      forced_(std::move(forced)) {
  if (static_cast<std::int64_t>(constraints_.size()) != sizes_.m)
    throw ConsistencyError("expected " + std::to_string(sizes_.m) + " constraints, got " +
                           std::to_string(constraints_.size()));
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    const Constraint& c = constraints_[i];
    if (static_cast<int>(c.arity()) != params_.k)
      throw ConsistencyError("constraint " + std::to_string(i) + " has wrong arity");
    if (c.domain_size() != sizes_.d)
      throw ConsistencyError("constraint " + std::to_string(i) + " has wrong domain size");
    if (!c.scope().empty() && c.scope().back() >= params_.n)
      throw ConsistencyError("constraint " + std::to_string(i) + " scope out of range");
    if (params_.model == ModelKind::RB &&
        static_cast<std::int64_t>(c.incompatible().size()) != sizes_.q)
      throw ConsistencyError("RB constraint " + std::to_string(i) + " must forbid exactly q = " +
                             std::to_string(sizes_.q) + " tuples");
  }
  if (forced_) {
    const auto report = check_assignment(*this, *forced_);
    if (!report.satisfied)
      throw ConsistencyError("forced assignment violates constraint " +
                             std::to_string(*report.violated));
  }
}

CspInstance CspInstance::without_hidden() const {
  CspInstance copy = *this;
  copy.forced_.reset();
  return copy;
}

SatisfactionReport check_assignment(const CspInstance& instance, const Assignment& t) {
  if (static_cast<int>(t.size()) != instance.num_vars())
    throw DimensionError("assignment has " + std::to_string(t.size()) + " values, instance has " +
                         std::to_string(instance.num_vars()) + " variables");
  for (int v : t.values)
    if (v < 0 || v >= instance.domain_size())
      throw DimensionError("assignment value " + std::to_string(v) + " outside domain");

  std::vector<int> projection(instance.params().k);
  const auto& constraints = instance.constraints();
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& scope = constraints[i].scope();
    for (std::size_t j = 0; j < scope.size(); ++j) projection[j] = t[scope[j]];
    if (constraints[i].forbids(projection)) return {false, i};
  }
  return {};
}

int similarity(const Assignment& a, const Assignment& b) {
  check_same_length(a, b);
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i] ? 1 : 0;
  return same;
}

double distance(const Assignment& a, const Assignment& b) {
  check_same_length(a, b);
  if (a.size() == 0) return 0.0;
  return 1.0 - static_cast<double>(similarity(a, b)) / static_cast<double>(a.size());
}

}  // namespace rbcsp
