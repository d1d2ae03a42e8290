#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rbcsp/params.hpp"

namespace rbcsp {

// Critical constraint density -alpha / ln(1 - p). DomainError unless
// alpha > 0 and 0 < p < 1.
double r_threshold(double alpha, double p);
// Critical tightness 1 - exp(-alpha / r). DomainError unless alpha, r > 0.
double p_threshold(double alpha, double r);

struct ThresholdCondition {
  std::string name;
  bool satisfied = false;
  double margin = 0.0;  // lhs - rhs; positive (or zero for >=) when satisfied
};

// Side conditions of the two exact-threshold results:
//   alpha_gt_inv_k:         alpha > 1/k
//   k_ge_inv_one_minus_p:   k >= 1/(1-p)           (density transition)
//   k_exp_neg_alpha_over_r: k exp(-alpha/r) >= 1   (tightness transition)
std::vector<ThresholdCondition> check_conditions(const CspParams& params);

struct ThresholdReport {
  double r_cr = 0.0;  // NaN when p is 0 or 1
  double p_cr = 0.0;
  std::vector<ThresholdCondition> conditions;
};

ThresholdReport threshold_report(const CspParams& params);

// ln E[N] = n ln d + m ln(1 - p_eff); -inf when p_eff = 1.
double first_moment_log(const CspParams& params);

// ln of the probability that one random constraint is satisfied by both
// members of a fixed assignment pair agreeing on S variables. DomainError
// for S outside [0, n].
double pair_sat_prob_log(const CspParams& params, int S);

// ln E[N^2] via log-sum-exp over the similarity S.
double second_moment_log(const CspParams& params);

// ln E_f[N] = ln E[N^2] - ln E[N].
double forced_expected_count_log(const CspParams& params);

struct ProfilePoint {
  int S = 0;
  double d_t = 0.0;
  double log_expected = 0.0;
};

// Expected number of solutions at each exact similarity S = 0..n from a
// reference assignment, for random (forced = false) or forced instances.
std::vector<ProfilePoint> distance_profile(const CspParams& params, bool forced);

// ln sum exp(x_i); -inf for an empty or all -inf input.
double log_sum_exp(const std::vector<double>& terms);

// ln C(n, k) through lgamma.
double log_binomial(std::int64_t n, std::int64_t k);

// Per-variable exponent of the random 3-SAT distance profile:
//   H(d_t) + r ln((6 + (1-d_t)^3)/7)   forced
//   H(d_t) + r ln(7/8)                 random
// with H the natural-log binary entropy (H(0) = H(1) = 0). DomainError for
// d_t outside [0, 1] or r <= 0.
double threesat_profile_exponent(double d_t, double r, bool forced);

struct Maximum {
  double argmax = 0.0;
  double value = 0.0;
};

// Grid scan of [0, 1] with step 1e-3, then golden-section refinement to 1e-6
// over the two cells around the best grid point.
Maximum maximize_exponent(const std::function<double(double)>& f);

// [1 - (1-p)^i]^d.
double flawed_prob_rd(std::int64_t d, double p, std::int64_t i);

// Exact inclusion-exclusion
//   1 + sum_{j=1..d} (-1)^j C(d, j) [C(d^k - j, q) / C(d^k, q)]^i
// evaluated in 100-digit floating point. SizeError for d > 64, DomainError
// for q > d^k or negative arguments.
double flawed_prob_rb(std::int64_t d, int k, std::int64_t q, std::int64_t i);

}  // namespace rbcsp
