// rbcsp: generate, analyze, encode and solve Model RB / RD instances, and run
// phase-transition experiments. Exit status: 0 success, 1 usage error,
// 2 runtime error (including a failed `validate`).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbcsp/analysis.hpp"
#include "rbcsp/encoder.hpp"
#include "rbcsp/errors.hpp"
#include "rbcsp/generator.hpp"
#include "rbcsp/harness.hpp"
#include "rbcsp/solver.hpp"

namespace fs = std::filesystem;
using namespace rbcsp;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::string model = "rb";
  int k = 2;
  int n = 0;
  double alpha = 0.0;
  std::optional<double> r;
  std::optional<double> p;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f, bool need_n) {
  cmd->add_option("--model", f.model, "rb or rd")->check(CLI::IsMember({"rb", "rd"}));
  cmd->add_option("--k", f.k, "constraint arity");
  auto* n = cmd->add_option("--n", f.n, "number of variables");
  if (need_n) n->required();
  cmd->add_option("--alpha", f.alpha, "domain exponent, d = n^alpha")->required();
  cmd->add_option("--r", f.r, "density coefficient, m = r n ln n");
  cmd->add_option("--p", f.p, "tightness");
}

// Missing r or p is filled with its threshold value from the other.
CspParams resolve(const ParamFlags& f) {
  CspParams params;
  params.model = parse_model(f.model);
  params.k = f.k;
  params.n = f.n;
  params.alpha = f.alpha;
  if (!f.r && !f.p) throw UsageError("at least one of --r and --p is required");
  params.r = f.r ? *f.r : r_threshold(f.alpha, *f.p);
  params.p = f.p ? *f.p : p_threshold(f.alpha, *f.r);
  return params;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || !fs::is_regular_file(path)) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  std::ostringstream ss;
  ss.precision(10);
  ss << x;
  return ss.str();
}

std::string threshold_text(const CspParams& params, bool with_sizes) {
  const ThresholdReport report = threshold_report(params);
  std::string out;
  out += "model=" + std::string(to_string(params.model)) + "\n";
  out += "k=" + std::to_string(params.k) + "\n";
  out += "alpha=" + real(params.alpha) + "\n";
  out += "r=" + real(params.r) + "\n";
  out += "p=" + real(params.p) + "\n";
  out += "r_cr=" + real(report.r_cr) + "\n";
  out += "p_cr=" + real(report.p_cr) + "\n";
  bool all = true;
  for (const auto& c : report.conditions) {
    out += "condition." + c.name + "=" + (c.satisfied ? "satisfied" : "violated") + "\n";
    out += "condition." + c.name + ".margin=" + real(c.margin) + "\n";
    all = all && c.satisfied;
  }
  out += std::string("conditions_all_satisfied=") + (all ? "1" : "0") + "\n";
  if (with_sizes) {
    const DerivedSizes sizes = derive_sizes(params);
    out += "n=" + std::to_string(params.n) + "\n";
    out += "d=" + std::to_string(sizes.d) + "\n";
    out += "m=" + std::to_string(sizes.m) + "\n";
    out += "q=" + std::to_string(sizes.q) + "\n";
    out += "tuple_space=" + std::to_string(sizes.tuple_space) + "\n";
    out += "ln_E_N=" + real(first_moment_log(params)) + "\n";
    if (effective_tightness(params, sizes) < 1.0) {
      out += "ln_E_N2=" + real(second_moment_log(params)) + "\n";
      out += "ln_Ef_N=" + real(forced_expected_count_log(params)) + "\n";
    }
  }
  return out;
}

std::string profile_csv(const CspParams& params) {
  const auto random = distance_profile(params, false);
  const auto forced = distance_profile(params, true);
  std::string out = "S,d_t,log_expected_random,log_expected_forced\n";
  for (std::size_t i = 0; i < random.size(); ++i) {
    out += std::to_string(random[i].S) + "," + real(random[i].d_t) + "," +
           real(random[i].log_expected) + "," + real(forced[i].log_expected) + "\n";
  }
  return out;
}

std::vector<double> axis_values(double from, double to, int points) {
  if (points < 1) throw UsageError("--points must be >= 1");
  std::vector<double> values;
  for (int i = 0; i < points; ++i)
    values.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
  return values;
}

int run(int argc, char** argv) {
  CLI::App app{"Model RB / RD instance generator, analyzer and experiment harness", "rbcsp"};
  app.require_subcommand(1);

  // gen
  ParamFlags gen_p;
  std::uint64_t gen_seed = 0;
  bool gen_forced = false;
  int gen_count = 1;
  std::string gen_format = "csp";
  std::string gen_dir = ".";
  bool gen_solution = false;
  std::optional<int> gen_split;
  auto* gen = app.add_subcommand("gen", "generate instances as RBCSP and/or DIMACS files");
  add_param_flags(gen, gen_p, true);
  gen->add_option("--seed", gen_seed, "instance seed (batch base seed when --count > 1)")->required();
  gen->add_flag("--forced", gen_forced, "plant a hidden satisfying assignment");
  gen->add_option("--count", gen_count, "number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--format", gen_format, "csp, dimacs or both")
      ->check(CLI::IsMember({"csp", "dimacs", "both"}));
  gen->add_option("--out-dir", gen_dir, "output directory");
  gen->add_flag("--emit-solution", gen_solution, "write <name>.solution for forced instances");
  gen->add_option("--split-width", gen_split, "split DIMACS domain clauses wider than this");

  // thresholds / analyze
  ParamFlags th_p;
  std::string th_profile;
  auto* thresholds = app.add_subcommand("thresholds", "threshold, side-condition and moment report");
  thresholds->alias("analyze");
  add_param_flags(thresholds, th_p, false);
  thresholds->add_option("--profile-csv", th_profile, "also write the distance profile CSV (needs --n)");

  // profile
  ParamFlags pr_p;
  std::string pr_out;
  auto* profile = app.add_subcommand("profile", "distance-profile CSV");
  add_param_flags(profile, pr_p, true);
  profile->add_option("-o,--out", pr_out, "output file (default stdout)");

  // encode
  std::string enc_in;
  std::string enc_out;
  std::optional<int> enc_split;
  auto* encode = app.add_subcommand("encode", "RBCSP file to DIMACS CNF");
  encode->add_option("input", enc_in, "RBCSP file")->required();
  encode->add_option("-o,--out", enc_out, "output file (default stdout)");
  encode->add_option("--split-width", enc_split, "split domain clauses wider than this");

  // solve
  std::string sv_in;
  std::string sv_heur = "mrv";
  std::optional<std::int64_t> sv_limit;
  bool sv_all = false;
  bool sv_quiet = false;
  auto* solve = app.add_subcommand("solve", "solve an RBCSP (forward checking) or DIMACS (DPLL) file");
  solve->add_option("input", sv_in, "instance file")->required();
  solve->add_option("--heuristic", sv_heur, "lex or mrv")->check(CLI::IsMember({"lex", "mrv"}));
  solve->add_option("--node-limit", sv_limit, "stop after this many nodes")->check(CLI::PositiveNumber);
  solve->add_flag("--count-all", sv_all, "count every solution");
  solve->add_flag("--no-witness", sv_quiet, "do not print the witness");

  // sweep
  ParamFlags sw_p;
  std::uint64_t sw_seed = 0;
  std::string sw_axis = "p";
  double sw_from = 0.5, sw_to = 1.5;
  int sw_points = 11;
  bool sw_relative = false;
  int sw_samples = 100;
  std::int64_t sw_limit = 10'000'000;
  bool sw_forced = false;
  std::string sw_heur = "mrv";
  unsigned sw_threads = 0;
  std::string sw_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "SAT fraction and search cost along p or r");
  add_param_flags(sweep_cmd, sw_p, true);
  sweep_cmd->add_option("--seed", sw_seed, "base seed")->required();
  sweep_cmd->add_option("--axis", sw_axis, "p or r")->check(CLI::IsMember({"p", "r"}));
  sweep_cmd->add_option("--from", sw_from, "first axis value");
  sweep_cmd->add_option("--to", sw_to, "last axis value");
  sweep_cmd->add_option("--points", sw_points, "grid size");
  sweep_cmd->add_flag("--relative", sw_relative, "--from/--to are multiples of the threshold");
  sweep_cmd->add_option("--samples", sw_samples, "instances per point")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--node-limit", sw_limit, "censoring limit")->check(CLI::PositiveNumber);
  sweep_cmd->add_flag("--forced", sw_forced, "forced instances");
  sweep_cmd->add_option("--heuristic", sw_heur, "lex or mrv")->check(CLI::IsMember({"lex", "mrv"}));
  sweep_cmd->add_option("--threads", sw_threads, "worker threads (0: all cores)");
  sweep_cmd->add_option("-o,--out", sw_out, "CSV file (default stdout)");

  // scale
  ParamFlags sc_p;
  std::uint64_t sc_seed = 0;
  std::vector<int> sc_ns{12, 16, 20, 24};
  int sc_samples = 100;
  std::int64_t sc_limit = 10'000'000;
  bool sc_random = false;
  std::string sc_heur = "mrv";
  unsigned sc_threads = 0;
  std::string sc_out;
  auto* scale = app.add_subcommand("scale", "median search cost of forced instances against n");
  add_param_flags(scale, sc_p, false);
  scale->add_option("--seed", sc_seed, "base seed")->required();
  scale->add_option("--n-values", sc_ns, "sizes")->delimiter(',');
  scale->add_option("--samples", sc_samples, "instances per size")->check(CLI::PositiveNumber);
  scale->add_option("--node-limit", sc_limit, "censoring limit")->check(CLI::PositiveNumber);
  scale->add_flag("--random", sc_random, "random instead of forced instances");
  scale->add_option("--heuristic", sc_heur, "lex or mrv")->check(CLI::IsMember({"lex", "mrv"}));
  scale->add_option("--threads", sc_threads, "worker threads (0: all cores)");
  scale->add_option("-o,--out", sc_out, "CSV file (default stdout)");

  // compare-forced
  ParamFlags cf_p;
  std::uint64_t cf_seed = 0;
  int cf_samples = 100;
  std::int64_t cf_limit = 10'000'000;
  int cf_budget = 50;
  std::string cf_heur = "mrv";
  unsigned cf_threads = 0;
  auto* compare = app.add_subcommand("compare-forced", "forced vs random-satisfiable search cost");
  add_param_flags(compare, cf_p, true);
  compare->add_option("--seed", cf_seed, "base seed")->required();
  compare->add_option("--samples", cf_samples, "instances per arm")->check(CLI::PositiveNumber);
  compare->add_option("--node-limit", cf_limit, "censoring limit")->check(CLI::PositiveNumber);
  compare->add_option("--budget-factor", cf_budget, "random arm generation budget per sample");
  compare->add_option("--heuristic", cf_heur, "lex or mrv")->check(CLI::IsMember({"lex", "mrv"}));
  compare->add_option("--threads", cf_threads, "worker threads (0: all cores)");

  // validate
  std::uint64_t va_seed = 0;
  int va_instances = 500;
  int va_samples = 2000;
  auto* validate = app.add_subcommand("validate", "oracle-equivalence and moment Monte-Carlo checks");
  validate->add_option("--seed", va_seed, "base seed")->required();
  validate->add_option("--instances", va_instances, "oracle sweep size")->check(CLI::PositiveNumber);
  validate->add_option("--samples", va_samples, "moment samples")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen) {
      const CspParams params = resolve(gen_p);
      fs::create_directories(gen_dir);
      for (int i = 0; i < gen_count; ++i) {
        const std::uint64_t seed =
            gen_count == 1 ? gen_seed : derive_stream(gen_seed, static_cast<std::uint64_t>(i));
        const CspInstance instance = generate({params, seed, gen_forced});
        const std::string name = std::string(to_string(params.model)) + "-k" +
                                 std::to_string(params.k) + "-n" + std::to_string(params.n) +
                                 (gen_forced ? "-forced" : "") + "-s" + std::to_string(seed);
        const fs::path stem = fs::path(gen_dir) / name;
        if (gen_format != "dimacs") write_file(stem.string() + ".rbcsp", write_csp_native(instance));
        if (gen_format != "csp")
          write_file(stem.string() + ".cnf", write_dimacs(encode_cnf(instance, gen_split)));
        if (gen_solution && instance.forced())
          write_file(stem.string() + ".solution", write_solution(*instance.forced()));
        std::cout << stem.string() << "\n";
      }
    } else if (*thresholds) {
      const CspParams params = resolve(th_p);
      const bool with_sizes = th_p.n > 0;
      if (with_sizes) derive_sizes(params);
      std::cout << threshold_text(params, with_sizes);
      if (!th_profile.empty()) {
        if (!with_sizes) throw UsageError("--profile-csv needs --n");
        write_file(th_profile, profile_csv(params));
      }
    } else if (*profile) {
      emit(pr_out, profile_csv(resolve(pr_p)));
    } else if (*encode) {
      emit(enc_out, write_dimacs(encode_cnf(read_csp_native(read_file(enc_in)), enc_split)));
    } else if (*solve) {
      const std::string text = read_file(sv_in);
      SolveConfig cfg;
      cfg.node_limit = sv_limit;
      cfg.heuristic = parse_heuristic(sv_heur);
      cfg.count_all = sv_all;
      const bool native = text.rfind("RBCSP", 0) == 0;
      const SolveResult result =
          native ? solve_csp(read_csp_native(text), cfg) : dpll(parse_dimacs(text), cfg);
      std::cout << "status=" << to_string(result.status) << "\n";
      std::cout << "nodes=" << result.nodes << "\n";
      std::cout << "backtracks=" << result.backtracks << "\n";
      if (result.solutions) std::cout << "solutions=" << *result.solutions << "\n";
      if (result.witness && !sv_quiet) {
        std::cout << "witness=";
        for (std::size_t i = 0; i < result.witness->size(); ++i) {
          if (i) std::cout << ' ';
          if (native) {
            std::cout << (*result.witness)[i] + 1;
          } else {
            std::cout << ((*result.witness)[i] ? "" : "-") << i + 1;
          }
        }
        std::cout << "\n";
      }
    } else if (*sweep_cmd) {
      SweepSpec spec;
      spec.base = resolve(sw_p);
      spec.axis = parse_axis(sw_axis);
      double scale_by = 1.0;
      if (sw_relative)
        scale_by = spec.axis == SweepAxis::P ? p_threshold(spec.base.alpha, spec.base.r)
                                             : r_threshold(spec.base.alpha, spec.base.p);
      spec.values = axis_values(sw_from * scale_by, sw_to * scale_by, sw_points);
      spec.samples_per_point = sw_samples;
      spec.base_seed = sw_seed;
      spec.node_limit = sw_limit;
      spec.forced = sw_forced;
      spec.heuristic = parse_heuristic(sw_heur);
      spec.threads = sw_threads;
      const auto records = sweep(spec);
      emit(sw_out, sweep_csv(records));
      if (const auto cross = crossing_estimate(records))
        std::cerr << "crossing_estimate=" << real(*cross) << "\n";
    } else if (*scale) {
      ScalingSpec spec;
      sc_p.n = 2;
      spec.base = resolve(sc_p);
      spec.n_values = sc_ns;
      spec.samples = sc_samples;
      spec.base_seed = sc_seed;
      spec.node_limit = sc_limit;
      spec.forced = !sc_random;
      spec.heuristic = parse_heuristic(sc_heur);
      spec.threads = sc_threads;
      emit(sc_out, scaling_csv(scaling_study(spec)));
    } else if (*compare) {
      CompareSpec spec;
      spec.params = resolve(cf_p);
      spec.samples = cf_samples;
      spec.base_seed = cf_seed;
      spec.node_limit = cf_limit;
      spec.budget_factor = cf_budget;
      spec.heuristic = parse_heuristic(cf_heur);
      spec.threads = cf_threads;
      std::cout << compare_report(forced_vs_random(spec));
    } else if (*validate) {
      const OracleReport oracles = validate_oracles(va_seed, va_instances);
      const MomentReport moments = validate_moments(va_seed, va_samples);
      const bool oracle_ok = oracles.status_mismatches == 0 && oracles.count_mismatches == 0;
      const bool random_ok = std::fabs(moments.random.z()) <= 3.0;
      const bool forced_ok = std::fabs(moments.forced.z()) <= 3.0;
      std::cout << (oracle_ok ? "PASS" : "FAIL") << " oracle equivalence: " << oracles.instances
                << " instances, " << oracles.sat_instances << " SAT, "
                << oracles.status_mismatches << " status mismatches, "
                << oracles.count_mismatches << " count mismatches\n";
      std::cout << (random_ok ? "PASS" : "FAIL") << " E[N]: mean " << real(moments.random.mean)
                << " se " << real(moments.random.standard_error) << " expected "
                << real(moments.random.expected) << "\n";
      std::cout << (forced_ok ? "PASS" : "FAIL") << " E_f[N]: mean " << real(moments.forced.mean)
                << " se " << real(moments.forced.standard_error) << " expected "
                << real(moments.forced.expected) << "\n";
      return oracle_ok && random_ok && forced_ok ? 0 : 2;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
