#include "cpm/cnf.hpp"

#include <cstdlib>
#include <sstream>

namespace cpm {

int PmEncoding::color_literal(NodeId v, int c) const {
  if (kind == Encoding::Binary) {
    const int x = static_cast<int>(v) + 1;
    return c == 1 ? x : -x;
  }
  return static_cast<int>(v) * k + c + 1;
}

Encoding preferred_encoding(const Graph&, int k) { return k == 2 ? Encoding::Binary : Encoding::OneHot; }

PmEncoding encode_pm(const Graph& g, int k, Encoding kind) {
  if (k < 1) throw PreconditionError("palette size must be positive");
  PmEncoding enc;
  enc.kind = kind;
  enc.k = k;
  enc.nodes = g.node_count();
  const int n = static_cast<int>(g.node_count());
  auto& clauses = enc.cnf.clauses;

  if (kind == Encoding::Binary) {
    if (k != 2) throw PreconditionError("the binary encoding needs k = 2");
    enc.cnf.num_vars = n;
    // For each color s of v: exactly one neighbor agrees with v.
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto inc = g.incident(v);
      for (int sign : {1, -1}) {
        const int own = sign * (static_cast<int>(v) + 1);
        auto same = [&](std::size_t i) { return sign * (static_cast<int>(inc[i].neighbor) + 1); };
        std::vector<int> alo{-own};
        for (std::size_t i = 0; i < inc.size(); ++i) {
          alo.push_back(same(i));
          for (std::size_t j = i + 1; j < inc.size(); ++j) clauses.push_back({-own, -same(i), -same(j)});
        }
        clauses.push_back(std::move(alo));
      }
    }
    return enc;
  }

  const int m_base = n * k;
  enc.cnf.num_vars = m_base + static_cast<int>(g.edge_count());
  auto x = [&](NodeId v, int c) { return static_cast<int>(v) * k + c + 1; };
  auto m = [&](EdgeId e) { return m_base + static_cast<int>(e) + 1; };

  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<int> alo;
    for (int c = 0; c < k; ++c) alo.push_back(x(v, c));
    clauses.push_back(alo);
    for (int c = 0; c < k; ++c) {
      for (int d = c + 1; d < k; ++d) clauses.push_back({-x(v, c), -x(v, d)});
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    for (int c = 0; c < k; ++c) {
      clauses.push_back({-m(e), -x(u, c), x(v, c)});
      clauses.push_back({-m(e), -x(v, c), x(u, c)});
      clauses.push_back({-x(u, c), -x(v, c), m(e)});
    }
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto inc = g.incident(v);
    std::vector<int> alo;
    for (const auto& i : inc) alo.push_back(m(i.edge));
    clauses.push_back(alo);
    for (std::size_t i = 0; i < inc.size(); ++i) {
      for (std::size_t j = i + 1; j < inc.size(); ++j) clauses.push_back({-m(inc[i].edge), -m(inc[j].edge)});
    }
  }
  return enc;
}

Coloring decode_model(const PmEncoding& enc, const std::vector<bool>& model) {
  if (model.size() < static_cast<std::size_t>(enc.cnf.num_vars)) {
    throw PreconditionError("model has fewer values than the encoding has variables");
  }
  Coloring col;
  col.k = enc.k;
  col.colors.resize(enc.nodes);
  for (std::size_t v = 0; v < enc.nodes; ++v) {
    if (enc.kind == Encoding::Binary) {
      col.colors[v] = model[v] ? 1 : 0;
      continue;
    }
    int found = -1;
    for (int c = 0; c < enc.k; ++c) {
      if (!model[v * static_cast<std::size_t>(enc.k) + static_cast<std::size_t>(c)]) continue;
      if (found != -1) throw PreconditionError("model gives node " + std::to_string(v) + " two colors");
      found = c;
    }
    if (found == -1) throw PreconditionError("model gives node " + std::to_string(v) + " no color");
    col.colors[v] = found;
  }
  return col;
}

std::string to_dimacs(const Cnf& cnf, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const std::string& c : comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool have_header = false;
  std::size_t declared = 0;
  std::vector<int> current;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) { return Error("dimacs line " + std::to_string(lineno) + ": " + what); };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      long long vars = -1;
      long long count = -1;
      if (have_header || !(ls >> fmt >> vars >> count) || fmt != "cnf" || vars < 0 || count < 0) {
        throw fail("bad problem line");
      }
      have_header = true;
      cnf.num_vars = static_cast<int>(vars);
      declared = static_cast<std::size_t>(count);
      continue;
    }
    if (!have_header) throw fail("clause before the problem line");
    do {
      char* end = nullptr;
      const long val = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw fail("bad literal '" + tok + "'");
      if (val == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::labs(val) > cnf.num_vars) throw fail("literal out of range");
        current.push_back(static_cast<int>(val));
      }
    } while (ls >> tok);
  }
  if (!have_header) throw Error("dimacs: missing problem line");
  if (!current.empty()) throw Error("dimacs: last clause is not terminated by 0");
  if (cnf.clauses.size() != declared) throw Error("dimacs: clause count does not match the problem line");
  return cnf;
}

std::string export_cnf(const Graph& g, int k) {
  const PmEncoding enc = encode_pm(g, k, Encoding::OneHot);
  const std::size_t n = g.node_count();
  return to_dimacs(enc.cnf,
                   {"perfect-matching coloring, k=" + std::to_string(k) + ", nodes=" + std::to_string(n) +
                        ", edges=" + std::to_string(g.edge_count()),
                    "variable v*k+c+1: node v has color c (v in [0," + std::to_string(n) + "), c in [0," +
                        std::to_string(k) + "))",
                    "variable " + std::to_string(n * static_cast<std::size_t>(k)) +
                        "+e+1: edge e is monochromatic"});
}

}  // namespace cpm
