#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rbcsp/params.hpp"
#include "rbcsp/solver.hpp"

namespace rbcsp {

enum class SweepAxis { P, R };

std::string_view to_string(SweepAxis axis) noexcept;
SweepAxis parse_axis(std::string_view text);

// Outcome of one solve inside an experiment.
struct RunOutcome {
  SolveStatus status = SolveStatus::Unsat;
  std::int64_t nodes = 0;
};

// Aggregate over the samples of one grid point.
//
// Censoring policy: runs stopped by the node limit are counted in
// `censored`. While fewer than half the samples are censored they are left
// out of the node statistics; otherwise they enter at the node count reached
// (the limit), so the median is itself censored. sat_fraction is taken over
// completed runs and is NaN when every run was censored.
struct ExperimentRecord {
  double axis_value = 0.0;
  double sat_fraction = 0.0;
  double median_nodes = 0.0;
  double mean_nodes = 0.0;
  int censored = 0;
  int samples = 0;

  bool fully_censored() const noexcept { return samples > 0 && censored == samples; }
};

ExperimentRecord summarize(double axis_value, const std::vector<RunOutcome>& runs);

double median(std::vector<double> values);

struct SweepSpec {
  CspParams base;
  SweepAxis axis = SweepAxis::P;
  std::vector<double> values;  // nonempty, ascending
  int samples_per_point = 1;
  std::uint64_t base_seed = 0;
  std::int64_t node_limit = 10'000'000;
  bool forced = false;
  Heuristic heuristic = Heuristic::Mrv;
  unsigned threads = 0;  // 0: hardware concurrency
};

// One record per axis value. Sample s of point j uses instance seed
// derive_stream(derive_stream(base_seed, j), s).
std::vector<ExperimentRecord> sweep(const SweepSpec& spec);

// Linear interpolation between the first two consecutive grid points whose
// sat_fraction brackets `level`. Nullopt when no pair brackets it.
std::optional<double> crossing_estimate(const std::vector<ExperimentRecord>& records,
                                        double level = 0.5);

// Header: axis_value,sat_fraction,median_nodes,mean_nodes,censored,samples
std::string sweep_csv(const std::vector<ExperimentRecord>& records);

struct ScalingSpec {
  CspParams base;  // n is replaced by each entry of n_values
  std::vector<int> n_values;
  int samples = 1;
  std::uint64_t base_seed = 0;
  std::int64_t node_limit = 10'000'000;
  bool forced = true;
  Heuristic heuristic = Heuristic::Mrv;
  unsigned threads = 0;
};

struct ScalingRecord {
  int n = 0;
  double median_nodes = 0.0;
  double sat_fraction = 0.0;
  double mean_nodes = 0.0;
  int censored = 0;
  int samples = 0;
};

// Sample s at size n uses instance seed derive_stream(derive_stream(base_seed, n), s),
// so a row depends only on (n, base_seed) and not on the rest of the list.
std::vector<ScalingRecord> scaling_study(const ScalingSpec& spec);

// Header: n,median_nodes,sat_fraction,mean_nodes,censored,samples
std::string scaling_csv(const std::vector<ScalingRecord>& records);

// Least-squares slope of ln(median_nodes) against n.
double log_median_slope(const std::vector<ScalingRecord>& records);

struct CompareSpec {
  CspParams params;
  int samples = 100;
  std::uint64_t base_seed = 0;
  std::int64_t node_limit = 10'000'000;
  Heuristic heuristic = Heuristic::Mrv;
  int budget_factor = 50;  // random arm draws at most budget_factor * samples instances
  unsigned threads = 0;
};

struct CompareSummary {
  double median_forced = 0.0;
  double median_random = 0.0;
  double ratio = 0.0;  // median_forced / median_random
  int forced_samples = 0;
  int random_samples = 0;
  int random_discarded = 0;  // generated random instances found UNSAT
  int censored_forced = 0;
  int censored_random = 0;
};

// Forced arm: seeds derive_stream(derive_stream(base_seed, 0), s).
// Random arm: seeds derive_stream(derive_stream(base_seed, 1), a) for
// attempts a = 0, 1, ...; instances reported SAT are kept until `samples`
// are collected. Throws InsufficientSampleError if fewer than 10 are found
// within the budget.
CompareSummary forced_vs_random(const CompareSpec& spec);

// key=value lines.
std::string compare_report(const CompareSummary& summary);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// Small-instance family used by the oracle cross-checks: n in [2, 6],
// d in {2, 3}, m in [1, 10], k in {2, 3}, both models, random and forced.
struct OracleCase {
  CspParams params;
  std::uint64_t seed = 0;
  bool forced = false;
};
OracleCase oracle_case(std::uint64_t base_seed, std::uint64_t index);

struct OracleReport {
  int instances = 0;
  int status_mismatches = 0;  // solve_csp (lex, mrv), dpll(encode_cnf), enumeration
  int count_mismatches = 0;   // CNF model count vs CSP solution count
  int sat_instances = 0;
};
OracleReport validate_oracles(std::uint64_t base_seed, int instances);

struct MomentCheck {
  double mean = 0.0;
  double standard_error = 0.0;
  double expected = 0.0;  // closed form
  int samples = 0;

  double z() const { return standard_error > 0 ? (mean - expected) / standard_error : 0.0; }
};
struct MomentReport {
  MomentCheck random;
  MomentCheck forced;
};
// Mean solution counts of RD instances at k=2, n=4, d=3, m=6, p=0.3 against
// exp(first_moment_log) (random) and exp(forced_expected_count_log) (forced).
MomentReport validate_moments(std::uint64_t base_seed, int samples);
// The parameter point used by validate_moments.
CspParams moment_check_params();

}  // namespace rbcsp
