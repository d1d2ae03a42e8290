#include "rbcsp/encoder.hpp"

#include <charconv>
#include <climits>
#include <cstdio>
#include <cstdlib>

#include "rbcsp/errors.hpp"

namespace rbcsp {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

template <typename T>
T parse_number(std::string_view token, std::size_t line, const char* what) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(token) + "'");
  return value;
}

void append_clause(std::string& out, const Clause& clause) {
  for (int lit : clause) {
    out += std::to_string(lit);
    out += ' ';
  }
  out += "0\n";
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int cnf_var(int u, int v, std::int64_t d) {
  const std::int64_t index = static_cast<std::int64_t>(u) * d + v + 1;
  if (index > INT_MAX) throw OverflowError("propositional variable index exceeds INT_MAX");
  return static_cast<int>(index);
}

CnfFormula encode_cnf(const CspInstance& instance, std::optional<int> split_width) {
  if (split_width && *split_width < 3) throw ParamRangeError("split width must be >= 3");
  const int n = instance.num_vars();
  const std::int64_t d = instance.domain_size();
  const std::int64_t base_vars = static_cast<std::int64_t>(n) * d;
  if (base_vars > INT_MAX) throw OverflowError("n * d exceeds INT_MAX");

  CnfFormula cnf;
  std::int64_t next_aux = base_vars + 1;
  auto fresh = [&] {
    if (next_aux > INT_MAX) throw OverflowError("auxiliary variable index exceeds INT_MAX");
    return static_cast<int>(next_aux++);
  };

  for (int u = 0; u < n; ++u) {
    Clause domain;
    domain.reserve(d);
    for (std::int64_t v = 0; v < d; ++v) domain.push_back(cnf_var(u, static_cast<int>(v), d));

    const std::size_t w = split_width ? static_cast<std::size_t>(*split_width) : 0;
    if (w == 0 || domain.size() <= w) {
      cnf.clauses.push_back(std::move(domain));
      continue;
    }
    std::size_t pos = w - 1;
    int carry = fresh();
    Clause first(domain.begin(), domain.begin() + static_cast<std::ptrdiff_t>(pos));
    first.push_back(carry);
    cnf.clauses.push_back(std::move(first));
    while (domain.size() - pos > w - 1) {
      Clause middle{-carry};
      middle.insert(middle.end(), domain.begin() + static_cast<std::ptrdiff_t>(pos),
                    domain.begin() + static_cast<std::ptrdiff_t>(pos + w - 2));
      pos += w - 2;
      carry = fresh();
      middle.push_back(carry);
      cnf.clauses.push_back(std::move(middle));
    }
    Clause last{-carry};
    last.insert(last.end(), domain.begin() + static_cast<std::ptrdiff_t>(pos), domain.end());
    cnf.clauses.push_back(std::move(last));
  }

  for (int u = 0; u < n; ++u)
    for (std::int64_t v = 0; v < d; ++v)
      for (std::int64_t w = v + 1; w < d; ++w)
        cnf.clauses.push_back(
            {-cnf_var(u, static_cast<int>(v), d), -cnf_var(u, static_cast<int>(w), d)});

  const int k = instance.params().k;
  for (const auto& constraint : instance.constraints()) {
    const auto& scope = constraint.scope();
    for (TupleRank rank : constraint.incompatible()) {
      const auto values = tuple_from_rank(rank, k, d);
      Clause conflict(k);
      for (int j = 0; j < k; ++j) conflict[j] = -cnf_var(scope[j], values[j], d);
      cnf.clauses.push_back(std::move(conflict));
    }
  }

  cnf.num_vars = static_cast<int>(next_aux - 1);

  const auto& params = instance.params();
  const auto& sizes = instance.sizes();
  cnf.metadata = {
      {"model", std::string(to_string(params.model))},
      {"k", std::to_string(params.k)},
      {"n", std::to_string(params.n)},
      {"alpha", format_real(params.alpha)},
      {"r", format_real(params.r)},
      {"p", format_real(params.p)},
      {"d", std::to_string(sizes.d)},
      {"m", std::to_string(sizes.m)},
      {"q", std::to_string(sizes.q)},
      {"seed", std::to_string(instance.seed())},
      {"forced", instance.forced() ? "1" : "0"},
  };
  return cnf;
}

std::string write_dimacs(const CnfFormula& cnf) {
  std::string out;
  for (const auto& [key, value] : cnf.metadata) out += "c " + key + "=" + value + "\n";
  out += "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& clause : cnf.clauses) append_clause(out, clause);
  return out;
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula cnf;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  Clause pending;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens[0] == "c") {
      const std::string_view line = lines[i];
      const auto body = line.substr(line.find('c') + 1);
      const auto eq = body.find('=');
      if (!have_header && eq != std::string_view::npos) {
        const auto kv = split_ws(body);
        if (kv.size() == 1) {
          const auto pos = kv[0].find('=');
          cnf.metadata.emplace_back(std::string(kv[0].substr(0, pos)),
                                    std::string(kv[0].substr(pos + 1)));
        }
      }
      continue;
    }
    if (tokens[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf") throw ParseError(lineno, "expected 'p cnf V C'");
      cnf.num_vars = parse_number<int>(tokens[2], lineno, "variable count");
      declared_clauses = parse_number<std::size_t>(tokens[3], lineno, "clause count");
      if (cnf.num_vars < 0) throw ParseError(lineno, "negative variable count");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before problem line");
    for (auto token : tokens) {
      const int lit = parse_number<int>(token, lineno, "literal");
      if (lit == 0) {
        cnf.clauses.push_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (lit == INT_MIN || std::abs(lit) > cnf.num_vars)
        throw ParseError(lineno, "literal " + std::to_string(lit) + " out of range");
      pending.push_back(lit);
    }
  }
  if (!have_header) throw ParseError(lines.size(), "missing problem line");
  if (!pending.empty()) throw ParseError(lines.size(), "unterminated clause");
  if (cnf.clauses.size() != declared_clauses)
    throw ParseError(lines.size(), "declared " + std::to_string(declared_clauses) +
                                       " clauses, found " + std::to_string(cnf.clauses.size()));
  return cnf;
}

std::string write_csp_native(const CspInstance& instance) {
  const auto& params = instance.params();
  const auto& sizes = instance.sizes();
  std::string out = "RBCSP 1\n";
  out += "params " + std::string(to_string(params.model)) + " " + std::to_string(params.k) + " " +
         std::to_string(params.n) + " " + format_real(params.alpha) + " " + format_real(params.r) +
         " " + format_real(params.p) + " " + std::to_string(instance.seed()) + "\n";
  out += "sizes " + std::to_string(sizes.d) + " " + std::to_string(sizes.m) + "\n";
  for (const auto& constraint : instance.constraints()) {
    out += "c";
    for (int u : constraint.scope()) out += " " + std::to_string(u + 1);
    out += "\n";
    for (TupleRank rank : constraint.incompatible()) {
      out += "t";
      for (int v : tuple_from_rank(rank, params.k, sizes.d)) out += " " + std::to_string(v + 1);
      out += "\n";
    }
  }
  return out;
}

CspInstance read_csp_native(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  auto next = [&](const char* expect) {
    while (i < lines.size() && split_ws(lines[i]).empty()) ++i;
    if (i >= lines.size()) throw ParseError(lines.size() + 1, std::string("expected ") + expect);
    return split_ws(lines[i++]);
  };

  auto header = next("RBCSP header");
  if (header.size() != 2 || header[0] != "RBCSP" || header[1] != "1")
    throw ParseError(i, "expected 'RBCSP 1'");

  auto p = next("params line");
  if (p.size() != 8 || p[0] != "params")
    throw ParseError(i, "expected 'params <model> <k> <n> <alpha> <r> <p> <seed>'");
  CspParams params;
  const std::size_t params_line = i;
  try {
    params.model = parse_model(p[1]);
  } catch (const ParamRangeError& e) {
    throw ParseError(params_line, e.what());
  }
  params.k = parse_number<int>(p[2], i, "k");
  params.n = parse_number<int>(p[3], i, "n");
  params.alpha = parse_number<double>(p[4], i, "alpha");
  params.r = parse_number<double>(p[5], i, "r");
  params.p = parse_number<double>(p[6], i, "p");
  const auto seed = parse_number<std::uint64_t>(p[7], i, "seed");

  DerivedSizes sizes;
  try {
    sizes = derive_sizes(params);
  } catch (const ParamRangeError& e) {
    throw ParseError(params_line, e.what());
  }

  auto s = next("sizes line");
  if (s.size() != 3 || s[0] != "sizes") throw ParseError(i, "expected 'sizes <d> <m>'");
  const auto d = parse_number<std::int64_t>(s[1], i, "d");
  const auto m = parse_number<std::int64_t>(s[2], i, "m");
  if (d != sizes.d || m != sizes.m)
    throw ConsistencyError("declared sizes d=" + std::to_string(d) + " m=" + std::to_string(m) +
                           " disagree with parameters (d=" + std::to_string(sizes.d) +
                           " m=" + std::to_string(sizes.m) + ")");

  std::vector<Constraint> constraints;
  std::vector<int> scope;
  std::vector<TupleRank> ranks;
  bool open = false;
  auto close = [&](std::size_t lineno) {
    if (!open) return;
    try {
      constraints.emplace_back(scope, ranks, params.n, d);
    } catch (const ConsistencyError& e) {
      throw ParseError(lineno, e.what());
    }
    scope.clear();
    ranks.clear();
    open = false;
  };

  std::vector<int> values(params.k);
  for (; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != static_cast<std::size_t>(params.k) + 1)
      throw ParseError(lineno, "expected " + std::to_string(params.k) + " entries");
    if (tokens[0] == "c") {
      close(lineno);
      for (int j = 0; j < params.k; ++j) {
        const int u = parse_number<int>(tokens[j + 1], lineno, "variable");
        if (u < 1 || u > params.n) throw ParseError(lineno, "variable out of range");
        scope.push_back(u - 1);
      }
      open = true;
    } else if (tokens[0] == "t") {
      if (!open) throw ParseError(lineno, "tuple line before any constraint line");
      for (int j = 0; j < params.k; ++j) {
        const int v = parse_number<int>(tokens[j + 1], lineno, "value");
        if (v < 1 || v > d) throw ParseError(lineno, "value out of range");
        values[j] = v - 1;
      }
      const TupleRank rank = tuple_rank(values, d);
      if (!ranks.empty() && rank <= ranks.back())
        throw ParseError(lineno, "tuples must be distinct and in ascending order");
      ranks.push_back(rank);
    } else {
      throw ParseError(lineno, "unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  close(lines.size());

  if (static_cast<std::int64_t>(constraints.size()) != m)
    throw ConsistencyError("declared m=" + std::to_string(m) + " but found " +
                           std::to_string(constraints.size()) + " constraints");
  return CspInstance(params, std::move(constraints), seed);
}

std::string write_solution(const Assignment& t) {
  std::string out;
  for (std::size_t u = 0; u < t.size(); ++u)
    out += std::to_string(u + 1) + " " + std::to_string(t[u] + 1) + "\n";
  return out;
}

Assignment read_solution(std::string_view text, int n, std::int64_t d) {
  Assignment t;
  t.values.assign(n, -1);
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(i + 1, "expected 'u v'");
    const int u = parse_number<int>(tokens[0], i + 1, "variable");
    const int v = parse_number<int>(tokens[1], i + 1, "value");
    if (u < 1 || u > n || v < 1 || v > d) throw ParseError(i + 1, "entry out of range");
    if (t.values[u - 1] != -1) throw ParseError(i + 1, "variable listed twice");
    t.values[u - 1] = v - 1;
  }
  for (int v : t.values)
    if (v < 0) throw ConsistencyError("solution file does not assign every variable");
  return t;
}

}  // namespace rbcsp
