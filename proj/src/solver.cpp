#include "rbcsp/solver.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <vector>

#include "rbcsp/errors.hpp"

namespace rbcsp {

std::string_view to_string(Heuristic h) noexcept { return h == Heuristic::Lex ? "lex" : "mrv"; }

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Sat:
      return "SAT";
    case SolveStatus::Unsat:
      return "UNSAT";
    case SolveStatus::Limit:
      return "LIMIT";
  }
  return "?";
}

Heuristic parse_heuristic(std::string_view text) {
  if (text == "lex") return Heuristic::Lex;
  if (text == "mrv") return Heuristic::Mrv;
  throw ParamRangeError("unknown heuristic '" + std::string(text) + "' (expected lex or mrv)");
}

namespace {

void check_limit(const SolveConfig& cfg) {
  if (cfg.node_limit && *cfg.node_limit < 1) throw ParamRangeError("node limit must be >= 1");
}

class ForwardChecker {
 public:
  ForwardChecker(const CspInstance& instance, const SolveConfig& cfg)
      : instance_(instance),
        cfg_(cfg),
        n_(instance.num_vars()),
        d_(static_cast<int>(instance.domain_size())),
        k_(instance.params().k),
        value_(n_, -1),
        present_(static_cast<std::size_t>(n_) * d_, 1),
        live_(n_, d_),
        watchers_(n_),
        unassigned_(instance.constraints().size(), k_),
        weight_(k_) {
    const auto& constraints = instance.constraints();
    for (std::size_t c = 0; c < constraints.size(); ++c)
      for (int u : constraints[c].scope()) watchers_[u].push_back(static_cast<int>(c));
    TupleRank w = 1;
    for (int j = k_ - 1; j >= 0; --j) {
      weight_[j] = w;
      w *= static_cast<TupleRank>(d_);
    }
  }

  SolveResult run() {
    search(0);
    if (aborted_) {
      result_.status = SolveStatus::Limit;
    } else if (result_.witness) {
      result_.status = SolveStatus::Sat;
    } else {
      result_.status = SolveStatus::Unsat;
    }
    if (cfg_.count_all) result_.solutions = count_;
    if (result_.witness && !check_assignment(instance_, *result_.witness).satisfied)
      throw std::logic_error("solve_csp produced a witness that violates the instance");
    return result_;
  }

 private:
  // Returns true when the search should stop.
  bool search(int depth) {
    if (depth == n_) {
      if (!result_.witness) result_.witness = Assignment{value_};
      ++count_;
      return !cfg_.count_all;
    }
    const int u = pick();
    for (int v = 0; v < d_; ++v) {
      if (!present_[index(u, v)]) continue;
      if (cfg_.node_limit && result_.nodes >= *cfg_.node_limit) {
        aborted_ = true;
        return true;
      }
      ++result_.nodes;
      const std::size_t mark = trail_.size();
      if (assign(u, v) && search(depth + 1)) return true;
      if (aborted_) return true;
      unassign(u, mark);
      ++result_.backtracks;
    }
    return false;
  }

  int pick() const {
    int best = -1;
    for (int u = 0; u < n_; ++u) {
      if (value_[u] >= 0) continue;
      if (cfg_.heuristic == Heuristic::Lex) return u;
      if (best < 0 || live_[u] < live_[best]) best = u;
    }
    return best;
  }

  bool assign(int u, int v) {
    value_[u] = v;
    for (int c : watchers_[u]) --unassigned_[c];
    const auto& constraints = instance_.constraints();
    for (int c : watchers_[u]) {
      if (unassigned_[c] != 1) continue;
      const Constraint& constraint = constraints[c];
      const auto& scope = constraint.scope();
      TupleRank base = 0;
      int free_pos = -1;
      for (int j = 0; j < k_; ++j) {
        const int w = scope[j];
        if (value_[w] < 0) {
          free_pos = j;
        } else {
          base += static_cast<TupleRank>(value_[w]) * weight_[j];
        }
      }
      const int w = scope[free_pos];
      for (int a = 0; a < d_; ++a) {
        if (!present_[index(w, a)]) continue;
        if (constraint.forbids(base + static_cast<TupleRank>(a) * weight_[free_pos])) {
          present_[index(w, a)] = 0;
          --live_[w];
          trail_.push_back(index(w, a));
        }
      }
      if (live_[w] == 0) return false;
    }
    return true;
  }

  void unassign(int u, std::size_t mark) {
    while (trail_.size() > mark) {
      const std::size_t i = trail_.back();
      trail_.pop_back();
      present_[i] = 1;
      ++live_[i / d_];
    }
    for (int c : watchers_[u]) ++unassigned_[c];
    value_[u] = -1;
  }

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(d_) + static_cast<std::size_t>(v);
  }

  const CspInstance& instance_;
  const SolveConfig& cfg_;
  int n_;
  int d_;
  int k_;
  std::vector<int> value_;
  std::vector<unsigned char> present_;
  std::vector<int> live_;
  std::vector<std::vector<int>> watchers_;
  std::vector<int> unassigned_;
  std::vector<TupleRank> weight_;
  std::vector<std::size_t> trail_;
  SolveResult result_;
  std::uint64_t count_ = 0;
  bool aborted_ = false;
};

class Dpll {
 public:
  Dpll(const CnfFormula& cnf, const SolveConfig& cfg)
      : cnf_(cnf), cfg_(cfg), value_(cnf.num_vars + 1, -1), occurs_(2 * (cnf.num_vars + 1)) {
    for (std::size_t c = 0; c < cnf.clauses.size(); ++c)
      for (int lit : cnf.clauses[c]) occurs_[slot(lit)].push_back(static_cast<int>(c));
  }

  SolveResult run() {
    bool empty = false;
    for (const auto& clause : cnf_.clauses) empty = empty || clause.empty();
    if (!empty && root_units() && propagate()) search();
    if (aborted_) {
      result_.status = SolveStatus::Limit;
    } else if (result_.witness) {
      result_.status = SolveStatus::Sat;
    } else {
      result_.status = SolveStatus::Unsat;
    }
    if (cfg_.count_all) result_.solutions = count_;
    return result_;
  }

 private:
  static std::size_t slot(int lit) {
    return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
  }

  int lit_value(int lit) const {
    const int v = value_[std::abs(lit)];
    if (v < 0) return -1;
    return (lit > 0) == (v == 1) ? 1 : 0;
  }

  void set(int lit) {
    value_[std::abs(lit)] = lit > 0 ? 1 : 0;
    trail_.push_back(lit);
  }

  bool root_units() {
    for (const auto& clause : cnf_.clauses) {
      if (clause.size() != 1) continue;
      const int val = lit_value(clause[0]);
      if (val == 0) return false;
      if (val < 0) set(clause[0]);
    }
    return true;
  }

  // Processes the trail from head_; false on conflict.
  bool propagate() {
    while (head_ < trail_.size()) {
      const int lit = trail_[head_++];
      for (int c : occurs_[slot(-lit)]) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int l : cnf_.clauses[c]) {
          const int val = lit_value(l);
          if (val == 1) {
            satisfied = true;
            break;
          }
          if (val < 0) {
            ++unassigned;
            last = l;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) set(last);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[std::abs(trail_.back())] = -1;
      trail_.pop_back();
    }
    head_ = mark;
  }

  bool search() {
    int var = 0;
    for (int x = 1; x <= cnf_.num_vars; ++x) {
      if (value_[x] < 0) {
        var = x;
        break;
      }
    }
    if (var == 0) {
      if (!result_.witness) {
        Assignment model;
        model.values.assign(value_.begin() + 1, value_.end());
        result_.witness = std::move(model);
      }
      ++count_;
      return !cfg_.count_all;
    }
    for (int lit : {var, -var}) {
      if (cfg_.node_limit && result_.nodes >= *cfg_.node_limit) {
        aborted_ = true;
        return true;
      }
      ++result_.nodes;
      const std::size_t mark = trail_.size();
      set(lit);
      if (propagate() && search()) return true;
      if (aborted_) return true;
      undo(mark);
      ++result_.backtracks;
    }
    return false;
  }

  const CnfFormula& cnf_;
  const SolveConfig& cfg_;
  std::vector<int> value_;
  std::vector<std::vector<int>> occurs_;
  std::vector<int> trail_;
  std::size_t head_ = 0;
  SolveResult result_;
  std::uint64_t count_ = 0;
  bool aborted_ = false;
};

}  // namespace

SolveResult solve_csp(const CspInstance& instance, const SolveConfig& cfg) {
  check_limit(cfg);
  return ForwardChecker(instance, cfg).run();
}

std::uint64_t enumerate_solutions(const CspInstance& instance, std::uint64_t cap) {
  const int n = instance.num_vars();
  const auto d = instance.domain_size();
  const double space = std::pow(static_cast<double>(d), n);
  if (space > 1e10) throw SizeError("enumerate_solutions: d^n exceeds 1e10");
  if (space > 1e7) std::clog << "warning: enumerating " << space << " assignments\n";

  std::uint64_t count = 0;
  Assignment t;
  t.values.assign(n, 0);
  std::vector<int> projection(instance.params().k);
  for (;;) {
    if (count >= cap) return count;
    bool ok = true;
    for (const auto& constraint : instance.constraints()) {
      const auto& scope = constraint.scope();
      for (std::size_t j = 0; j < scope.size(); ++j) projection[j] = t[scope[j]];
      if (constraint.forbids(projection)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;

    int pos = n - 1;
    while (pos >= 0 && t.values[pos] == d - 1) t.values[pos--] = 0;
    if (pos < 0) return count;
    ++t.values[pos];
  }
}

SolveResult dpll(const CnfFormula& cnf, const SolveConfig& cfg) {
  check_limit(cfg);
  return Dpll(cnf, cfg).run();
}

}  // namespace rbcsp
