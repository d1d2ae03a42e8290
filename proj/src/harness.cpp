#include "rbcsp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "rbcsp/errors.hpp"
#include "rbcsp/generator.hpp"

namespace rbcsp {

namespace {

std::string csv_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

RunOutcome run_one(const CspParams& params, std::uint64_t seed, bool forced,
                   std::int64_t node_limit, Heuristic heuristic) {
  const CspInstance instance = generate({params, seed, forced});
  SolveConfig cfg;
  cfg.node_limit = node_limit;
  cfg.heuristic = heuristic;
  const SolveResult result = solve_csp(instance, cfg);
  return {result.status, result.nodes};
}

}  // namespace

std::string_view to_string(SweepAxis axis) noexcept { return axis == SweepAxis::P ? "p" : "r"; }

SweepAxis parse_axis(std::string_view text) {
  if (text == "p") return SweepAxis::P;
  if (text == "r") return SweepAxis::R;
  throw ParamRangeError("unknown sweep axis '" + std::string(text) + "' (expected p or r)");
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

ExperimentRecord summarize(double axis_value, const std::vector<RunOutcome>& runs) {
  ExperimentRecord record;
  record.axis_value = axis_value;
  record.samples = static_cast<int>(runs.size());
  int sat = 0;
  for (const auto& run : runs) {
    if (run.status == SolveStatus::Limit) ++record.censored;
    if (run.status == SolveStatus::Sat) ++sat;
  }
  const int completed = record.samples - record.censored;
  record.sat_fraction = completed > 0 ? static_cast<double>(sat) / completed
                                      : std::numeric_limits<double>::quiet_NaN();

  const bool drop_censored = 2 * record.censored < record.samples;
  std::vector<double> nodes;
  for (const auto& run : runs)
    if (!drop_censored || run.status != SolveStatus::Limit)
      nodes.push_back(static_cast<double>(run.nodes));
  record.median_nodes = median(nodes);
  record.mean_nodes = nodes.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : std::accumulate(nodes.begin(), nodes.end(), 0.0) /
                                          static_cast<double>(nodes.size());
  return record;
}

std::vector<ExperimentRecord> sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ParamRangeError("sweep needs at least one axis value");
  if (!std::is_sorted(spec.values.begin(), spec.values.end()))
    throw ParamRangeError("sweep axis values must be ascending");
  if (spec.samples_per_point < 1) throw ParamRangeError("samples per point must be >= 1");

  const std::size_t points = spec.values.size();
  const auto per = static_cast<std::size_t>(spec.samples_per_point);
  std::vector<CspParams> grid(points, spec.base);
  for (std::size_t j = 0; j < points; ++j) {
    if (spec.axis == SweepAxis::P) {
      grid[j].p = spec.values[j];
    } else {
      grid[j].r = spec.values[j];
    }
    derive_sizes(grid[j]);
  }

  std::vector<RunOutcome> outcomes(points * per);
  parallel_for(outcomes.size(), spec.threads, [&](std::size_t task) {
    const std::size_t j = task / per;
    const std::size_t s = task % per;
    const std::uint64_t seed = derive_stream(derive_stream(spec.base_seed, j), s);
    outcomes[task] = run_one(grid[j], seed, spec.forced, spec.node_limit, spec.heuristic);
  });

  std::vector<ExperimentRecord> records;
  records.reserve(points);
  for (std::size_t j = 0; j < points; ++j) {
    std::vector<RunOutcome> runs(outcomes.begin() + static_cast<std::ptrdiff_t>(j * per),
                                 outcomes.begin() + static_cast<std::ptrdiff_t>((j + 1) * per));
    records.push_back(summarize(spec.values[j], runs));
  }
  return records;
}

std::optional<double> crossing_estimate(const std::vector<ExperimentRecord>& records,
                                        double level) {
  for (std::size_t j = 0; j + 1 < records.size(); ++j) {
    const double a = records[j].sat_fraction;
    const double b = records[j + 1].sat_fraction;
    if (std::isnan(a) || std::isnan(b)) continue;
    if ((a - level) * (b - level) > 0.0) continue;
    if (a == b) return records[j].axis_value;
    const double t = (a - level) / (a - b);
    return records[j].axis_value + t * (records[j + 1].axis_value - records[j].axis_value);
  }
  return std::nullopt;
}

std::string sweep_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = "axis_value,sat_fraction,median_nodes,mean_nodes,censored,samples\n";
  for (const auto& r : records) {
    out += csv_real(r.axis_value) + "," + csv_real(r.sat_fraction) + "," +
           csv_real(r.median_nodes) + "," + csv_real(r.mean_nodes) + "," +
           std::to_string(r.censored) + "," + std::to_string(r.samples) + "\n";
  }
  return out;
}

std::vector<ScalingRecord> scaling_study(const ScalingSpec& spec) {
  if (spec.n_values.empty()) throw ParamRangeError("scaling study needs at least one n");
  if (spec.samples < 1) throw ParamRangeError("samples must be >= 1");
  const std::size_t points = spec.n_values.size();
  const auto per = static_cast<std::size_t>(spec.samples);
  std::vector<CspParams> grid(points, spec.base);
  for (std::size_t j = 0; j < points; ++j) {
    grid[j].n = spec.n_values[j];
    derive_sizes(grid[j]);
  }

  std::vector<RunOutcome> outcomes(points * per);
  parallel_for(outcomes.size(), spec.threads, [&](std::size_t task) {
    const std::size_t j = task / per;
    const std::size_t s = task % per;
    const auto n = static_cast<std::uint64_t>(spec.n_values[j]);
    const std::uint64_t seed = derive_stream(derive_stream(spec.base_seed, n), s);
    outcomes[task] = run_one(grid[j], seed, spec.forced, spec.node_limit, spec.heuristic);
  });

  std::vector<ScalingRecord> records;
  for (std::size_t j = 0; j < points; ++j) {
    std::vector<RunOutcome> runs(outcomes.begin() + static_cast<std::ptrdiff_t>(j * per),
                                 outcomes.begin() + static_cast<std::ptrdiff_t>((j + 1) * per));
    const ExperimentRecord e = summarize(spec.n_values[j], runs);
    records.push_back({spec.n_values[j], e.median_nodes, e.sat_fraction, e.mean_nodes, e.censored,
                       e.samples});
  }
  return records;
}

std::string scaling_csv(const std::vector<ScalingRecord>& records) {
  std::string out = "n,median_nodes,sat_fraction,mean_nodes,censored,samples\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + "," + csv_real(r.median_nodes) + "," + csv_real(r.sat_fraction) +
           "," + csv_real(r.mean_nodes) + "," + std::to_string(r.censored) + "," +
           std::to_string(r.samples) + "\n";
  }
  return out;
}

double log_median_slope(const std::vector<ScalingRecord>& records) {
  if (records.size() < 2) throw ParamRangeError("slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(records.size());
  for (const auto& r : records) {
    const double x = r.n;
    const double y = std::log(r.median_nodes);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

CompareSummary forced_vs_random(const CompareSpec& spec) {
  if (spec.samples < 1) throw ParamRangeError("samples must be >= 1");
  const auto per = static_cast<std::size_t>(spec.samples);
  const std::uint64_t forced_stream = derive_stream(spec.base_seed, 0);
  const std::uint64_t random_stream = derive_stream(spec.base_seed, 1);

  std::vector<RunOutcome> forced(per);
  parallel_for(per, spec.threads, [&](std::size_t s) {
    forced[s] = run_one(spec.params, derive_stream(forced_stream, s), true, spec.node_limit,
                        spec.heuristic);
  });

  // Random arm in fixed-size batches so the kept set is independent of
  // scheduling: attempts are consumed in index order.
  std::vector<RunOutcome> kept;
  CompareSummary summary;
  const std::size_t budget = per * static_cast<std::size_t>(std::max(1, spec.budget_factor));
  std::size_t attempt = 0;
  while (kept.size() < per && attempt < budget) {
    const std::size_t batch = std::min(budget - attempt, std::max<std::size_t>(per, 16));
    std::vector<RunOutcome> runs(batch);
    parallel_for(batch, spec.threads, [&](std::size_t b) {
      runs[b] = run_one(spec.params, derive_stream(random_stream, attempt + b), false,
                        spec.node_limit, spec.heuristic);
    });
    for (const auto& run : runs) {
      if (kept.size() >= per) break;
      if (run.status == SolveStatus::Sat) {
        kept.push_back(run);
      } else if (run.status == SolveStatus::Unsat) {
        ++summary.random_discarded;
      } else {
        ++summary.censored_random;
      }
    }
    attempt += batch;
  }
  if (kept.size() < 10)
    throw InsufficientSampleError("only " + std::to_string(kept.size()) +
                                  " random satisfiable instances within the generation budget");

  const ExperimentRecord f = summarize(0.0, forced);
  const ExperimentRecord r = summarize(0.0, kept);
  summary.median_forced = f.median_nodes;
  summary.median_random = r.median_nodes;
  summary.ratio = f.median_nodes / r.median_nodes;
  summary.forced_samples = f.samples;
  summary.random_samples = r.samples;
  summary.censored_forced = f.censored;
  return summary;
}

std::string compare_report(const CompareSummary& s) {
  std::string out;
  out += "median_nodes_forced=" + csv_real(s.median_forced) + "\n";
  out += "median_nodes_random_sat=" + csv_real(s.median_random) + "\n";
  out += "ratio=" + csv_real(s.ratio) + "\n";
  out += "forced_samples=" + std::to_string(s.forced_samples) + "\n";
  out += "random_samples=" + std::to_string(s.random_samples) + "\n";
  out += "random_discarded_unsat=" + std::to_string(s.random_discarded) + "\n";
  out += "censored_forced=" + std::to_string(s.censored_forced) + "\n";
  out += "censored_random=" + std::to_string(s.censored_random) + "\n";
  return out;
}

}  // namespace rbcsp
