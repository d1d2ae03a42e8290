#include <limits>

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rbcsp/analysis.hpp"
#include "rbcsp/encoder.hpp"
#include "rbcsp/errors.hpp"
#include "rbcsp/generator.hpp"
#include "rbcsp/harness.hpp"
#include "rbcsp/solver.hpp"

namespace py = pybind11;
using namespace rbcsp;

namespace {

SolveConfig make_config(std::optional<std::int64_t> node_limit, const std::string& heuristic,
                        bool count_all) {
  SolveConfig cfg;
  cfg.node_limit = node_limit;
  cfg.heuristic = parse_heuristic(heuristic);
  cfg.count_all = count_all;
  return cfg;
}

py::dict result_dict(const SolveResult& r) {
  py::dict out;
  out["status"] = std::string(to_string(r.status));
  out["nodes"] = r.nodes;
  out["backtracks"] = r.backtracks;
  out["witness"] = r.witness ? py::cast(r.witness->values) : py::none();
  out["solutions"] = r.solutions ? py::cast(*r.solutions) : py::none();
  return out;
}

py::dict record_dict(const ExperimentRecord& r) {
  py::dict out;
  out["axis_value"] = r.axis_value;
  out["sat_fraction"] = r.sat_fraction;
  out["median_nodes"] = r.median_nodes;
  out["mean_nodes"] = r.mean_nodes;
  out["censored"] = r.censored;
  out["samples"] = r.samples;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model RB/RD random CSP generation, analysis, encoding and solving";

  auto error = py::register_exception<Error>(m, "RbcspError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::enum_<ModelKind>(m, "ModelKind").value("RB", ModelKind::RB).value("RD", ModelKind::RD);

  py::class_<CspParams>(m, "CspParams")
      .def(py::init([](const std::string& model, int k, int n, double alpha, double r, double p) {
             CspParams params;
             params.model = parse_model(model);
             params.k = k;
             params.n = n;
             params.alpha = alpha;
             params.r = r;
             params.p = p;
             return params;
           }),
           py::arg("model") = "rb", py::arg("k") = 2, py::arg("n") = 20, py::arg("alpha") = 0.8,
           py::arg("r") = 1.5, py::arg("p") = 0.25)
      .def_readwrite("model", &CspParams::model)
      .def_readwrite("k", &CspParams::k)
      .def_readwrite("n", &CspParams::n)
      .def_readwrite("alpha", &CspParams::alpha)
      .def_readwrite("r", &CspParams::r)
      .def_readwrite("p", &CspParams::p)
      .def("__repr__", [](const CspParams& p) {
        return "CspParams(model='" + std::string(to_string(p.model)) + "', k=" + std::to_string(p.k) +
               ", n=" + std::to_string(p.n) + ", alpha=" + format_real(p.alpha) +
               ", r=" + format_real(p.r) + ", p=" + format_real(p.p) + ")";
      });

  py::class_<DerivedSizes>(m, "DerivedSizes")
      .def_readonly("d", &DerivedSizes::d)
      .def_readonly("m", &DerivedSizes::m)
      .def_readonly("q", &DerivedSizes::q)
      .def_readonly("tuple_space", &DerivedSizes::tuple_space);
  m.def("derive_sizes", &derive_sizes);

  py::class_<CspInstance>(m, "CspInstance")
      .def_property_readonly("params", &CspInstance::params)
      .def_property_readonly("sizes", &CspInstance::sizes)
      .def_property_readonly("seed", &CspInstance::seed)
      .def_property_readonly("num_vars", &CspInstance::num_vars)
      .def_property_readonly("domain_size", &CspInstance::domain_size)
      .def_property_readonly("forced",
                             [](const CspInstance& i) -> std::optional<std::vector<int>> {
                               if (!i.forced()) return std::nullopt;
                               return i.forced()->values;
                             })
      .def_property_readonly("scopes",
                             [](const CspInstance& i) {
                               std::vector<std::vector<int>> out;
                               for (const auto& c : i.constraints()) out.push_back(c.scope());
                               return out;
                             })
      .def_property_readonly("incompatible",
                             [](const CspInstance& i) {
                               std::vector<std::vector<TupleRank>> out;
                               for (const auto& c : i.constraints())
                                 out.emplace_back(c.incompatible().begin(), c.incompatible().end());
                               return out;
                             })
      .def("check", [](const CspInstance& i, std::vector<int> values) {
        const auto report = check_assignment(i, Assignment{std::move(values)});
        return report.satisfied;
      })
      .def("violated", [](const CspInstance& i, std::vector<int> values) {
        return check_assignment(i, Assignment{std::move(values)}).violated;
      })
      .def("to_native", &write_csp_native)
      .def("to_dimacs",
           [](const CspInstance& i, std::optional<int> split_width) {
             return write_dimacs(encode_cnf(i, split_width));
           },
           py::arg("split_width") = std::nullopt)
      .def(py::self == py::self);

  m.def("generate",
        [](const CspParams& params, std::uint64_t seed, bool forced) {
          return generate({params, seed, forced});
        },
        py::arg("params"), py::arg("seed"), py::arg("forced") = false);
  m.def("read_native", [](const std::string& text) { return read_csp_native(text); });
  m.def("derive_stream", &derive_stream);

  m.def("r_threshold", &r_threshold, py::arg("alpha"), py::arg("p"));
  m.def("p_threshold", &p_threshold, py::arg("alpha"), py::arg("r"));
  m.def("check_conditions", [](const CspParams& params) {
    py::dict out;
    for (const auto& c : check_conditions(params)) out[py::str(c.name)] = py::make_tuple(c.satisfied, c.margin);
    return out;
  });
  m.def("first_moment_log", &first_moment_log);
  m.def("second_moment_log", &second_moment_log);
  m.def("forced_expected_count_log", &forced_expected_count_log);
  m.def("distance_profile", [](const CspParams& params, bool forced) {
    std::vector<std::tuple<int, double, double>> out;
    for (const auto& pt : distance_profile(params, forced)) out.emplace_back(pt.S, pt.d_t, pt.log_expected);
    return out;
  }, py::arg("params"), py::arg("forced") = false);
  m.def("log_sum_exp", &log_sum_exp);
  m.def("threesat_profile_exponent", &threesat_profile_exponent, py::arg("d_t"), py::arg("r"),
        py::arg("forced"));
  m.def("maximize_exponent", [](const std::function<double(double)>& f) {
    const Maximum best = maximize_exponent(f);
    return py::make_tuple(best.argmax, best.value);
  });
  m.def("flawed_prob_rd", &flawed_prob_rd, py::arg("d"), py::arg("p"), py::arg("i"));
  m.def("flawed_prob_rb", &flawed_prob_rb, py::arg("d"), py::arg("k"), py::arg("q"), py::arg("i"));

  m.def("encode_cnf",
        [](const CspInstance& i, std::optional<int> split_width) {
          const CnfFormula cnf = encode_cnf(i, split_width);
          return py::make_tuple(cnf.num_vars, cnf.clauses);
        },
        py::arg("instance"), py::arg("split_width") = std::nullopt);

  m.def("solve",
        [](const CspInstance& i, std::optional<std::int64_t> node_limit, const std::string& heuristic,
           bool count_all) { return result_dict(solve_csp(i, make_config(node_limit, heuristic, count_all))); },
        py::arg("instance"), py::arg("node_limit") = std::nullopt, py::arg("heuristic") = "lex",
        py::arg("count_all") = false);
  m.def("dpll",
        [](int num_vars, std::vector<Clause> clauses, bool count_all) {
          CnfFormula cnf;
          cnf.num_vars = num_vars;
          cnf.clauses = std::move(clauses);
          return result_dict(dpll(cnf, make_config(std::nullopt, "lex", count_all)));
        },
        py::arg("num_vars"), py::arg("clauses"), py::arg("count_all") = false);
  m.def("enumerate_solutions", &enumerate_solutions, py::arg("instance"),
        py::arg("cap") = std::numeric_limits<std::uint64_t>::max());

  m.def("sweep",
        [](const CspParams& base, const std::string& axis, std::vector<double> values, int samples,
           std::uint64_t seed, bool forced, std::int64_t node_limit, const std::string& heuristic,
           unsigned threads) {
          SweepSpec spec;
          spec.base = base;
          spec.axis = parse_axis(axis);
          spec.values = std::move(values);
          spec.samples_per_point = samples;
          spec.base_seed = seed;
          spec.forced = forced;
          spec.node_limit = node_limit;
          spec.heuristic = parse_heuristic(heuristic);
          spec.threads = threads;
          std::vector<ExperimentRecord> records;
          {
            py::gil_scoped_release release;
            records = sweep(spec);
          }
          py::list out;
          for (const auto& r : records) out.append(record_dict(r));
          return out;
        },
        py::arg("base"), py::arg("axis"), py::arg("values"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("forced") = false, py::arg("node_limit") = 10'000'000, py::arg("heuristic") = "mrv",
        py::arg("threads") = 0);

  m.def("scaling_study",
        [](const CspParams& base, std::vector<int> n_values, int samples, std::uint64_t seed, bool forced,
           std::int64_t node_limit, const std::string& heuristic, unsigned threads) {
          ScalingSpec spec;
          spec.base = base;
          spec.n_values = std::move(n_values);
          spec.samples = samples;
          spec.base_seed = seed;
          spec.forced = forced;
          spec.node_limit = node_limit;
          spec.heuristic = parse_heuristic(heuristic);
          spec.threads = threads;
          std::vector<ScalingRecord> records;
          {
            py::gil_scoped_release release;
            records = scaling_study(spec);
          }
          py::list out;
          for (const auto& r : records) {
            py::dict row;
            row["n"] = r.n;
            row["median_nodes"] = r.median_nodes;
            row["sat_fraction"] = r.sat_fraction;
            row["mean_nodes"] = r.mean_nodes;
            row["censored"] = r.censored;
            row["samples"] = r.samples;
            out.append(row);
          }
          return out;
        },
        py::arg("base"), py::arg("n_values"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("forced") = true, py::arg("node_limit") = 10'000'000, py::arg("heuristic") = "mrv",
        py::arg("threads") = 0);

  m.def("forced_vs_random",
        [](const CspParams& params, int samples, std::uint64_t seed, std::int64_t node_limit,
           const std::string& heuristic, unsigned threads) {
          CompareSpec spec;
          spec.params = params;
          spec.samples = samples;
          spec.base_seed = seed;
          spec.node_limit = node_limit;
          spec.heuristic = parse_heuristic(heuristic);
          spec.threads = threads;
          CompareSummary s;
          {
            py::gil_scoped_release release;
            s = forced_vs_random(spec);
          }
          py::dict out;
          out["median_forced"] = s.median_forced;
          out["median_random"] = s.median_random;
          out["ratio"] = s.ratio;
          out["forced_samples"] = s.forced_samples;
          out["random_samples"] = s.random_samples;
          out["random_discarded"] = s.random_discarded;
          out["censored_forced"] = s.censored_forced;
          out["censored_random"] = s.censored_random;
          return out;
        },
        py::arg("params"), py::arg("samples") = 100, py::arg("seed") = 0,
        py::arg("node_limit") = 10'000'000, py::arg("heuristic") = "mrv", py::arg("threads") = 0);
}
