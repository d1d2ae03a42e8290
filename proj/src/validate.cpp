#include <cmath>
#include <limits>

#include "rbcsp/analysis.hpp"
#include "rbcsp/encoder.hpp"
#include "rbcsp/generator.hpp"
#include "rbcsp/harness.hpp"

namespace rbcsp {

namespace {

MomentCheck mean_and_error(const std::vector<double>& counts, double expected) {
  MomentCheck check;
  check.samples = static_cast<int>(counts.size());
  check.expected = expected;
  double sum = 0.0;
  for (double c : counts) sum += c;
  check.mean = sum / check.samples;
  double ss = 0.0;
  for (double c : counts) ss += (c - check.mean) * (c - check.mean);
  const double variance = check.samples > 1 ? ss / (check.samples - 1) : 0.0;
  check.standard_error = std::sqrt(variance / check.samples);
  return check;
}

}  // namespace

OracleCase oracle_case(std::uint64_t base_seed, std::uint64_t index) {
  Xoshiro256 rng(derive_stream(base_seed, index));
  OracleCase c;
  const int n = 2 + static_cast<int>(rng.below(5));
  const int d = 2 + static_cast<int>(rng.below(2));
  const int k = (n >= 3 && rng.below(4) == 0) ? 3 : 2;
  const int m = 1 + static_cast<int>(rng.below(10));
  c.params.model = rng.below(2) == 0 ? ModelKind::RB : ModelKind::RD;
  c.forced = rng.below(2) == 1;
  c.params.k = k;
  c.params.n = n;
  c.params.alpha = std::log(static_cast<double>(d)) / std::log(static_cast<double>(n));
  c.params.r = static_cast<double>(m) / (n * std::log(static_cast<double>(n)));
  c.params.p = static_cast<double>(rng.below(11)) / 10.0;
  if (c.forced) {
    const double space = std::pow(static_cast<double>(d), k);
    c.params.p = std::min(c.params.p, (space - 1.0) / space);
  }
  c.seed = rng();
  return c;
}

OracleReport validate_oracles(std::uint64_t base_seed, int instances) {
  OracleReport report;
  for (int i = 0; i < instances; ++i) {
    const OracleCase c = oracle_case(base_seed, static_cast<std::uint64_t>(i));
    const CspInstance instance = generate({c.params, c.seed, c.forced});

    const std::uint64_t count =
        enumerate_solutions(instance, std::numeric_limits<std::uint64_t>::max());
    SolveConfig lex;
    SolveConfig mrv;
    mrv.heuristic = Heuristic::Mrv;
    SolveConfig all;
    all.count_all = true;

    const bool enum_sat = count > 0;
    const bool lex_sat = solve_csp(instance, lex).status == SolveStatus::Sat;
    const bool mrv_sat = solve_csp(instance, mrv).status == SolveStatus::Sat;
    const CnfFormula cnf = encode_cnf(instance);
    const bool dpll_sat = dpll(cnf, lex).status == SolveStatus::Sat;

    ++report.instances;
    if (enum_sat) ++report.sat_instances;
    if (lex_sat != enum_sat || mrv_sat != enum_sat || dpll_sat != enum_sat)
      ++report.status_mismatches;

    const auto cnf_models = dpll(cnf, all).solutions.value_or(0);
    const auto csp_models = solve_csp(instance, all).solutions.value_or(0);
    if (cnf_models != count || csp_models != count) ++report.count_mismatches;
  }
  return report;
}

CspParams moment_check_params() {
  CspParams params;
  params.model = ModelKind::RD;
  params.k = 2;
  params.n = 4;
  params.alpha = std::log(3.0) / std::log(4.0);
  params.r = 6.0 / (4.0 * std::log(4.0));
  params.p = 0.3;
  return params;
}

MomentReport validate_moments(std::uint64_t base_seed, int samples) {
  const CspParams params = moment_check_params();
  const std::uint64_t random_stream = derive_stream(base_seed, 0);
  const std::uint64_t forced_stream = derive_stream(base_seed, 1);
  std::vector<double> random_counts;
  std::vector<double> forced_counts;
  for (int s = 0; s < samples; ++s) {
    const auto index = static_cast<std::uint64_t>(s);
    const auto cap = std::numeric_limits<std::uint64_t>::max();
    random_counts.push_back(static_cast<double>(
        enumerate_solutions(generate({params, derive_stream(random_stream, index), false}), cap)));
    forced_counts.push_back(static_cast<double>(
        enumerate_solutions(generate({params, derive_stream(forced_stream, index), true}), cap)));
  }
  MomentReport report;
  report.random = mean_and_error(random_counts, std::exp(first_moment_log(params)));
  report.forced = mean_and_error(forced_counts, std::exp(forced_expected_count_log(params)));
  return report;
}

}  // namespace rbcsp
