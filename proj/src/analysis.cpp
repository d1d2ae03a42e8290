#include "rbcsp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

// Fraction of k-subsets of n variables lying inside a fixed S-subset.
double inside_fraction(std::int64_t S, std::int64_t n, int k) {
  if (S < k) return 0.0;
  double sigma = 1.0;
  for (int i = 0; i < k; ++i)
    sigma *= static_cast<double>(S - i) / static_cast<double>(n - i);
  return sigma;
}

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log1p(-x);
  return h;
}

}  // namespace

double r_threshold(double alpha, double p) {
  if (!(alpha > 0.0)) throw DomainError("r_threshold: alpha must be positive");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("r_threshold: p must lie in (0, 1)");
  return -alpha / std::log1p(-p);
}

double p_threshold(double alpha, double r) {
  if (!(alpha > 0.0)) throw DomainError("p_threshold: alpha must be positive");
  if (!(r > 0.0)) throw DomainError("p_threshold: r must be positive");
  return -std::expm1(-alpha / r);
}

std::vector<ThresholdCondition> check_conditions(const CspParams& params) {
  const double k = params.k;
  std::vector<ThresholdCondition> out;

  const double alpha_margin = params.alpha - 1.0 / k;
  out.push_back({"alpha_gt_inv_k", alpha_margin > 0.0, alpha_margin});

  const double inv = params.p < 1.0 ? 1.0 / (1.0 - params.p) : std::numeric_limits<double>::infinity();
  const double k_margin = k - inv;
  out.push_back({"k_ge_inv_one_minus_p", k_margin >= 0.0, k_margin});

  const double e_margin = k * std::exp(-params.alpha / params.r) - 1.0;
  out.push_back({"k_exp_neg_alpha_over_r", e_margin >= 0.0, e_margin});
  return out;
}

ThresholdReport threshold_report(const CspParams& params) {
  ThresholdReport report;
  report.r_cr = (params.p > 0.0 && params.p < 1.0) ? r_threshold(params.alpha, params.p)
                                                   : std::numeric_limits<double>::quiet_NaN();
  report.p_cr = p_threshold(params.alpha, params.r);
  report.conditions = check_conditions(params);
  return report;
}

double first_moment_log(const CspParams& params) {
  const DerivedSizes sizes = derive_sizes(params);
  const double p_eff = effective_tightness(params, sizes);
  if (p_eff >= 1.0) return kNegInf;
  return static_cast<double>(params.n) * std::log(static_cast<double>(sizes.d)) +
         static_cast<double>(sizes.m) * std::log1p(-p_eff);
}

double pair_sat_prob_log(const CspParams& params, int S) {
  if (S < 0 || S > params.n) throw DomainError("pair_sat_prob_log: S outside [0, n]");
  const DerivedSizes sizes = derive_sizes(params);
  const double p_eff = effective_tightness(params, sizes);
  const double sigma = inside_fraction(S, params.n, params.k);

  double both_differ;
  if (params.model == ModelKind::RD) {
    both_differ = (1.0 - p_eff) * (1.0 - p_eff);
  } else {
    const double space = static_cast<double>(sizes.tuple_space);
    const double free = space - static_cast<double>(sizes.q);
    both_differ = free * (free - 1.0) / (space * (space - 1.0));
    if (free < 1.0) both_differ = 0.0;
  }
  return safe_log((1.0 - p_eff) * sigma + both_differ * (1.0 - sigma));
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double log_sum_exp(const std::vector<double>& terms) {
  double peak = kNegInf;
  for (double t : terms) peak = std::max(peak, t);
  if (peak == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - peak);
  return peak + std::log(acc);
}

double second_moment_log(const CspParams& params) {
  const DerivedSizes sizes = derive_sizes(params);
  const double log_d = std::log(static_cast<double>(sizes.d));
  const double log_d1 = std::log(static_cast<double>(sizes.d - 1));
  const double m = static_cast<double>(sizes.m);
  std::vector<double> terms;
  terms.reserve(params.n + 1);
  for (int S = 0; S <= params.n; ++S) {
    terms.push_back(log_binomial(params.n, S) + (params.n - S) * log_d1 + params.n * log_d +
                    m * pair_sat_prob_log(params, S));
  }
  return log_sum_exp(terms);
}

double forced_expected_count_log(const CspParams& params) {
  const double first = first_moment_log(params);
  if (first == kNegInf) throw DomainError("forced count undefined when p_eff = 1");
  return second_moment_log(params) - first;
}

std::vector<ProfilePoint> distance_profile(const CspParams& params, bool forced) {
  const DerivedSizes sizes = derive_sizes(params);
  const double p_eff = effective_tightness(params, sizes);
  const double log_keep = safe_log(1.0 - p_eff);
  const double log_d1 = std::log(static_cast<double>(sizes.d - 1));
  const double m = static_cast<double>(sizes.m);

  std::vector<ProfilePoint> points;
  points.reserve(params.n + 1);
  for (int S = 0; S <= params.n; ++S) {
    const double shell = log_binomial(params.n, S) + (params.n - S) * log_d1;
    double value;
    if (forced) {
      value = shell + m * (pair_sat_prob_log(params, S) - log_keep);
    } else {
      value = shell + m * log_keep;
    }
    points.push_back({S, 1.0 - static_cast<double>(S) / params.n, value});
  }
  return points;
}

double threesat_profile_exponent(double d_t, double r, bool forced) {
  if (!(d_t >= 0.0 && d_t <= 1.0)) throw DomainError("d_t must lie in [0, 1]");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const double clause = forced ? std::log((6.0 + std::pow(1.0 - d_t, 3)) / 7.0)
                               : std::log(7.0 / 8.0);
  return binary_entropy(d_t) + r * clause;
}

Maximum maximize_exponent(const std::function<double(double)>& f) {
  constexpr int kCells = 1000;
  auto eval = [&](double x) {
    const double y = f(x);
    return std::isnan(y) ? kNegInf : y;
  };

  Maximum best{0.0, eval(0.0)};
  int best_i = 0;
  for (int i = 1; i <= kCells; ++i) {
    const double x = static_cast<double>(i) / kCells;
    const double y = eval(x);
    if (y > best.value) {
      best = {x, y};
      best_i = i;
    }
  }

  double lo = static_cast<double>(std::max(best_i - 1, 0)) / kCells;
  double hi = static_cast<double>(std::min(best_i + 1, kCells)) / kCells;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = eval(a);
  double fb = eval(b);
  while (hi - lo > 1e-7) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = eval(b);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = eval(a);
    }
  }
  const double x = 0.5 * (lo + hi);
  const double y = eval(x);
  if (y >= best.value) best = {x, y};
  return best;
}

double flawed_prob_rd(std::int64_t d, double p, std::int64_t i) {
  if (d < 1 || i < 0 || !(p >= 0.0 && p <= 1.0))
    throw DomainError("flawed_prob_rd: need d >= 1, i >= 0, p in [0, 1]");
  const double value_flawed = 1.0 - std::pow(1.0 - p, static_cast<double>(i));
  return std::pow(value_flawed, static_cast<double>(d));
}

double flawed_prob_rb(std::int64_t d, int k, std::int64_t q, std::int64_t i) {
  using Real = boost::multiprecision::cpp_bin_float_100;
  if (d < 1 || k < 1 || q < 0 || i < 0) throw DomainError("flawed_prob_rb: negative argument");
  if (d > 64) throw SizeError("flawed_prob_rb: exact inclusion-exclusion limited to d <= 64");

  Real space = 1;
  for (int j = 0; j < k; ++j) space *= d;
  if (Real(q) > space) throw DomainError("flawed_prob_rb: q exceeds d^k");

  // all_kept = C(D - j, q) / C(D, q) = prod_{l<j} (D - q - l) / (D - l)
  Real total = 1;
  Real all_kept = 1;
  Real binom = 1;
  for (std::int64_t j = 1; j <= d; ++j) {
    const Real l = j - 1;
    const Real free = space - q - l;
    all_kept = free > 0 ? Real(all_kept * free / (space - l)) : Real(0);
    binom = binom * (d - j + 1) / j;
    const Real term = binom * boost::multiprecision::pow(all_kept, static_cast<int>(i));
    total += (j % 2 == 1) ? -term : term;
  }

  auto value = static_cast<double>(total);
  if (value < 0.0 && value > -1e-12) value = 0.0;
  if (value > 1.0 && value < 1.0 + 1e-12) value = 1.0;
  return value;
}

}  // namespace rbcsp
