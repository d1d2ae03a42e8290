#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rbcsp/encoder.hpp"
#include "rbcsp/instance.hpp"

namespace rbcsp {

enum class Heuristic { Lex, Mrv };
enum class SolveStatus { Sat, Unsat, Limit };

std::string_view to_string(Heuristic h) noexcept;
std::string_view to_string(SolveStatus s) noexcept;
// "lex" or "mrv"; throws ParamRangeError otherwise.
Heuristic parse_heuristic(std::string_view text);

struct SolveConfig {
  std::optional<std::int64_t> node_limit;  // >= 1 when present
  Heuristic heuristic = Heuristic::Lex;
  bool count_all = false;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  // First solution found. For dpll the values are 0/1 per propositional
  // variable 1..num_vars (index 0 is variable 1).
  std::optional<Assignment> witness;
  std::int64_t nodes = 0;
  std::int64_t backtracks = 0;
  std::optional<std::uint64_t> solutions;  // set when count_all
};

// Chronological backtracking with forward checking.
//
// After each assignment, every constraint left with exactly one unassigned
// variable prunes that variable's domain; a wipeout triggers a retraction.
// Variables are chosen lexicographically or by minimum remaining values
// (ties to the lowest index); values are tried in ascending order.
// `nodes` counts value assignments, `backtracks` counts retractions. When
// the node limit would be exceeded the search stops with Limit.
SolveResult solve_csp(const CspInstance& instance, const SolveConfig& cfg = {});

// Exhaustive count of satisfying assignments, stopping once `cap` is reached.
// Prints a warning to std::clog when d^n > 1e7; throws SizeError when
// d^n > 1e10.
std::uint64_t enumerate_solutions(const CspInstance& instance, std::uint64_t cap);

// DPLL with unit propagation, branching on the lowest unassigned variable,
// true first. `nodes` counts decisions. With count_all, `solutions` is the
// number of total models over all num_vars variables.
SolveResult dpll(const CnfFormula& cnf, const SolveConfig& cfg = {});

}  // namespace rbcsp
