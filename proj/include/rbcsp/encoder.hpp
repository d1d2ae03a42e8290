#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbcsp/instance.hpp"

namespace rbcsp {

using Clause = std::vector<int>;

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::pair<std::string, std::string>> metadata;  // "c key=value" lines

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

// Propositional index of "variable u takes value v": u * d + v + 1.
int cnf_var(int u, int v, std::int64_t d);

// Direct encoding: n domain clauses, n d(d-1)/2 pairwise at-most-one clauses,
// then one conflict clause per incompatible tuple (constraints in order,
// tuples in ascending rank).
//
// With split_width = w (w >= 3) every domain clause wider than w becomes a
// chain: (x1 .. x_{w-1} y1), (-y1 x.. y2), ..., (-y_last x..), each at most w
// wide, with auxiliary variables numbered after n d in emission order.
// Metadata carries model, k, n, alpha, r, p, d, m, q, seed and forced; never
// the hidden assignment. Throws OverflowError past INT_MAX variables.
CnfFormula encode_cnf(const CspInstance& instance, std::optional<int> split_width = std::nullopt);

// "c key=value" metadata lines, "p cnf V C", then one "l1 ... lk 0" line per
// clause. Every line ends with '\n'.
std::string write_dimacs(const CnfFormula& cnf);
// Reads DIMACS CNF. Comments of the form "c key=value" become metadata.
// Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);

// Native line format:
//   RBCSP 1
//   params <model> <k> <n> <alpha> <r> <p> <seed>
//   sizes <d> <m>
//   c <i1> ... <ik>          one per constraint, 1-indexed variables
//   t <v1> ... <vk>          its incompatible tuples, 1-indexed, ascending rank
// Reals use 17 significant digits. The hidden assignment is never written.
std::string write_csp_native(const CspInstance& instance);
// Throws ParseError (with line number) or ConsistencyError.
CspInstance read_csp_native(std::string_view text);

// Sidecar solution file: one "u v" line per variable, both 1-indexed.
std::string write_solution(const Assignment& t);
Assignment read_solution(std::string_view text, int n, std::int64_t d);

// printf "%.17g": 17 significant digits, enough to round-trip any double.
std::string format_real(double x);

}  // namespace rbcsp
