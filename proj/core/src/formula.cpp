#include "cpm/formula.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

namespace cpm {

namespace {

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
  });
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

const std::string& slot(const Clause& c, int i) { return i == 0 ? c.a : (i == 1 ? c.b : c.c); }

// Union-find over clause indices.
struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

Formula Formula::make(std::vector<std::string> variables, std::vector<Clause> clauses) {
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (!valid_identifier(v)) throw FormulaError(0, "invalid identifier '" + v + "'");
    if (!seen.insert(v).second) throw FormulaError(0, "duplicate variable '" + v + "'");
  }
  for (const auto& c : clauses) {
    for (int i = 0; i < 3; ++i) {
      if (!seen.contains(slot(c, i))) throw FormulaError(0, "clause uses undeclared variable '" + slot(c, i) + "'");
    }
  }
  Formula f;
  f.variables_ = std::move(variables);
  f.clauses_ = std::move(clauses);
  return f;
}

bool Formula::has_variable(std::string_view name) const {
  return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

Formula parse_formula(std::string_view text) {
  std::vector<std::string> vars;
  std::set<std::string> known;
  std::vector<Clause> clauses;
  bool declared = false;
  bool seen_content = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) {
      if (end == text.size()) break;
      continue;
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (!valid_identifier(tokens[i])) throw FormulaError(line_no, "invalid identifier '" + tokens[i] + "'");
    }
    if (tokens.front() == "vars") {
      if (declared) throw FormulaError(line_no, "duplicate 'vars' line");
      if (seen_content) throw FormulaError(line_no, "'vars' must be the first non-comment line");
      declared = true;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!known.insert(tokens[i]).second) throw FormulaError(line_no, "duplicate variable '" + tokens[i] + "'");
        vars.push_back(tokens[i]);
      }
    } else if (tokens.front() == "nae") {
      if (tokens.size() != 4) {
        throw FormulaError(line_no, "clause arity must be 3, got " + std::to_string(tokens.size() - 1));
      }
      for (std::size_t i = 1; i < 4; ++i) {
        if (known.contains(tokens[i])) continue;
        if (declared) throw FormulaError(line_no, "undeclared variable '" + tokens[i] + "'");
        known.insert(tokens[i]);
        vars.push_back(tokens[i]);
      }
      clauses.push_back({tokens[1], tokens[2], tokens[3]});
    } else {
      throw FormulaError(line_no, "unknown keyword '" + tokens.front() + "'");
    }
    seen_content = true;
    if (end == text.size()) break;
  }
  return Formula::make(std::move(vars), std::move(clauses));
}

std::string serialize_formula(const Formula& f) {
  std::ostringstream out;
  out << "vars";
  for (const auto& v : f.variables()) out << ' ' << v;
  out << '\n';
  for (const auto& c : f.clauses()) out << "nae " << c.a << ' ' << c.b << ' ' << c.c << '\n';
  return out.str();
}

bool eval_nae(const Clause& clause, const Assignment& asg) {
  bool vals[3];
  for (int i = 0; i < 3; ++i) {
    auto it = asg.find(slot(clause, i));
    if (it == asg.end()) throw PreconditionError("assignment is missing variable '" + slot(clause, i) + "'");
    vals[i] = it->second;
  }
  return !(vals[0] == vals[1] && vals[1] == vals[2]);
}

bool is_satisfying(const Formula& f, const Assignment& asg) {
  for (const auto& v : f.variables()) {
    if (!asg.contains(v)) throw PreconditionError("assignment is missing variable '" + v + "'");
  }
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& c) { return eval_nae(c, asg); });
}

std::vector<std::vector<std::size_t>> clause_graph(const Formula& f) {
  const auto& cs = f.clauses();
  std::vector<std::vector<std::size_t>> adj(cs.size());
  std::map<std::string, std::vector<std::size_t>> by_var;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::set<std::string> names{cs[i].a, cs[i].b, cs[i].c};
    for (const auto& n : names) by_var[n].push_back(i);
  }
  std::vector<std::set<std::size_t>> sets(cs.size());
  for (const auto& [name, occ] : by_var) {
    for (std::size_t i : occ) {
      for (std::size_t j : occ) {
        if (i != j) sets[i].insert(j);
      }
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i) adj[i].assign(sets[i].begin(), sets[i].end());
  return adj;
}

std::vector<std::vector<std::size_t>> clause_components(const Formula& f) {
  const auto adj = clause_graph(f);
  Dsu dsu(adj.size());
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (std::size_t j : adj[i]) dsu.unite(i, j);
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < adj.size(); ++i) groups[dsu.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return out;
}

bool is_clause_connected(const Formula& f) { return clause_components(f).size() <= 1; }

ConnectedFormula make_clause_connected(const Formula& f) {
  auto comps = clause_components(f);
  if (comps.size() <= 1) return {f, {}};

  std::vector<std::string> vars = f.variables();
  std::vector<Clause> clauses = f.clauses();
  std::vector<Clause> added;
  std::set<std::string> taken(vars.begin(), vars.end());

  auto least_var = [&](std::size_t clause_index) {
    const Clause& c = clauses[clause_index];
    return std::min({c.a, c.b, c.c});
  };

  // Each component is represented by its least clause index; merging keeps
  // the smaller one, so the list stays sorted.
  std::vector<std::size_t> heads;
  for (const auto& c : comps) heads.push_back(c.front());

  std::size_t counter = 0;
  while (heads.size() > 1) {
    std::string fresh = "_cc" + std::to_string(counter++);
    for (std::size_t suffix = 1; taken.contains(fresh); ++suffix) {
      fresh = "_cc" + std::to_string(counter - 1) + "_" + std::to_string(suffix);
    }
    taken.insert(fresh);
    vars.push_back(fresh);
    Clause bridge{least_var(heads[0]), least_var(heads[1]), fresh};
    clauses.push_back(bridge);
    added.push_back(bridge);
    heads.erase(heads.begin() + 1);
  }
  return {Formula::make(std::move(vars), std::move(clauses)), std::move(added)};
}

std::vector<Assignment> brute_force_nae(const Formula& f, std::size_t limit) {
  const auto& vars = f.variables();
  if (vars.size() > kMaxBruteForceVariables) {
    throw PreconditionError("brute_force_nae: " + std::to_string(vars.size()) + " variables exceeds the bound of " +
                            std::to_string(kMaxBruteForceVariables));
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index[vars[i]] = i;
  struct Triple {
    std::size_t a, b, c;
  };
  std::vector<Triple> triples;
  for (const auto& c : f.clauses()) triples.push_back({index.at(c.a), index.at(c.b), index.at(c.c)});

  const std::size_t n = vars.size();
  std::vector<Assignment> out;
  if (limit == 0) return out;
  // Bit (n-1-i) of `mask` holds variable i, so counting upward is
  // lexicographic with the first variable most significant.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto val = [&](std::size_t i) { return ((mask >> (n - 1 - i)) & 1U) != 0; };
    bool ok = std::all_of(triples.begin(), triples.end(), [&](const Triple& t) {
      bool x = val(t.a), y = val(t.b), z = val(t.c);
      return !(x == y && y == z);
    });
    if (!ok) continue;
    Assignment a;
    for (std::size_t i = 0; i < n; ++i) a[vars[i]] = val(i);
    out.push_back(std::move(a));
    if (out.size() >= limit) break;
  }
  return out;
}

}  // namespace cpm
