#include "cpm/graph_io.hpp"

#include <array>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace cpm {

namespace {

using nlohmann::json;

std::string quote(const std::string& s) { return json(s).dump(); }

template <typename Range>
void write_int_list(std::ostringstream& out, const Range& r) {
  out << '[';
  bool first = true;
  for (const auto& x : r) {
    if (!first) out << ", ";
    out << x;
    first = false;
  }
  out << ']';
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw GraphFormatError(path + "/" + key, "missing field");
  return *it;
}

std::int64_t require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw GraphFormatError(path, "expected an integer");
  return j.get<std::int64_t>();
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw GraphFormatError(path, "expected an array");
  return j;
}

}  // namespace

std::string emit_graph(const Graph& g, const RotationSystem* rot, const Coloring* col) {
  std::ostringstream out;
  out << "{\n  \"format\": \"cpm-graph\",\n  \"version\": 1,\n  \"nodes\": [";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const Node& n = g.node(static_cast<NodeId>(i));
    out << (i ? ",\n    " : "\n    ") << "{\"id\": " << n.id << ", \"role\": " << quote(std::string(role_name(n.role)))
        << ", \"label\": " << quote(n.label) << ", \"origin\": " << quote(n.origin) << '}';
  }
  out << (g.node_count() ? "\n  ]" : "]") << ",\n  \"edges\": [";
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(static_cast<EdgeId>(e));
    out << (e ? ",\n    " : "\n    ") << '[' << ed.u << ", " << ed.v << ']';
  }
  out << (g.edge_count() ? "\n  ]" : "]");
  if (rot != nullptr) {
    out << ",\n  \"rotation\": [";
    for (std::size_t v = 0; v < rot->order.size(); ++v) {
      out << (v ? ",\n    " : "\n    ");
      write_int_list(out, rot->order[v]);
    }
    out << (rot->order.empty() ? "]" : "\n  ]");
  }
  if (col != nullptr) {
    out << ",\n  \"coloring\": {\"k\": " << col->k << ", \"colors\": ";
    write_int_list(out, col->colors);
    out << '}';
  }
  out << "\n}\n";
  return out.str();
}

GraphFile parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw GraphFormatError("", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw GraphFormatError("", "top level must be an object");
  const json& format = require(doc, "format", "");
  if (format != "cpm-graph") throw GraphFormatError("/format", "expected \"cpm-graph\"");
  if (require_int(require(doc, "version", ""), "/version") != 1) {
    throw GraphFormatError("/version", "unsupported version");
  }

  std::vector<Node> nodes;
  const json& jnodes = require_array(require(doc, "nodes", ""), "/nodes");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string path = "/nodes/" + std::to_string(i);
    const json& jn = jnodes[i];
    if (!jn.is_object()) throw GraphFormatError(path, "expected an object");
    Node n;
    const auto id = require_int(require(jn, "id", path), path + "/id");
    if (id != static_cast<std::int64_t>(i)) throw GraphFormatError(path + "/id", "ids must be dense and equal the index");
    n.id = static_cast<NodeId>(id);
    const json& jrole = require(jn, "role", path);
    if (!jrole.is_string()) throw GraphFormatError(path + "/role", "expected a string");
    auto role = role_from_name(jrole.get<std::string>());
    if (!role) throw GraphFormatError(path + "/role", "unknown role '" + jrole.get<std::string>() + "'");
    n.role = *role;
    if (auto it = jn.find("label"); it != jn.end()) {
      if (!it->is_string()) throw GraphFormatError(path + "/label", "expected a string");
      n.label = it->get<std::string>();
    }
    if (auto it = jn.find("origin"); it != jn.end()) {
      if (!it->is_string()) throw GraphFormatError(path + "/origin", "expected a string");
      n.origin = it->get<std::string>();
    }
    nodes.push_back(std::move(n));
  }

  std::vector<Edge> edges;
  const json& jedges = require_array(require(doc, "edges", ""), "/edges");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    const json& je = jedges[i];
    if (!je.is_array() || je.size() != 2) throw GraphFormatError(path, "expected a pair of node ids");
    std::array<NodeId, 2> ends{};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto x = require_int(je[k], path + "/" + std::to_string(k));
      if (x < 0 || x >= static_cast<std::int64_t>(nodes.size())) {
        throw GraphFormatError(path + "/" + std::to_string(k), "unknown node id " + std::to_string(x));
      }
      ends[k] = static_cast<NodeId>(x);
    }
    edges.push_back({ends[0], ends[1]});
  }

  GraphFile out;
  const std::size_t node_count = nodes.size();
  const std::size_t edge_count = edges.size();
  try {
    out.graph = Graph(std::move(nodes), std::move(edges));
  } catch (const PreconditionError& e) {
    throw GraphFormatError("/edges", e.what());
  }

  if (auto it = doc.find("rotation"); it != doc.end()) {
    const json& jrot = require_array(*it, "/rotation");
    if (jrot.size() != node_count) throw GraphFormatError("/rotation", "must have one entry per node");
    RotationSystem rot;
    rot.order.resize(node_count);
    for (std::size_t v = 0; v < jrot.size(); ++v) {
      const std::string path = "/rotation/" + std::to_string(v);
      for (std::size_t k = 0; k < require_array(jrot[v], path).size(); ++k) {
        const auto e = require_int(jrot[v][k], path + "/" + std::to_string(k));
        if (e < 0 || e >= static_cast<std::int64_t>(edge_count)) {
          throw GraphFormatError(path + "/" + std::to_string(k), "unknown edge id " + std::to_string(e));
        }
        rot.order[v].push_back(static_cast<EdgeId>(e));
      }
    }
    out.rotation = std::move(rot);
  }

  if (auto it = doc.find("coloring"); it != doc.end()) {
    if (!it->is_object()) throw GraphFormatError("/coloring", "expected an object");
    Coloring col;
    const auto k = require_int(require(*it, "k", "/coloring"), "/coloring/k");
    if (k < 1 || k > 64) throw GraphFormatError("/coloring/k", "palette size out of range");
    col.k = static_cast<int>(k);
    const json& jc = require_array(require(*it, "colors", "/coloring"), "/coloring/colors");
    if (jc.size() != node_count) throw GraphFormatError("/coloring/colors", "must have one entry per node");
    for (std::size_t v = 0; v < jc.size(); ++v) {
      const auto c = require_int(jc[v], "/coloring/colors/" + std::to_string(v));
      if (c < 0 || c >= k) throw GraphFormatError("/coloring/colors/" + std::to_string(v), "color outside palette");
      col.colors.push_back(static_cast<int>(c));
    }
    out.coloring = std::move(col);
  }
  return out;
}

std::string emit_dot(const Graph& g, const Coloring* col) {
  static constexpr std::array<const char*, 8> kFill{"white", "gray40", "tomato", "lightblue",
                                                    "gold", "palegreen", "orchid", "orange"};
  std::ostringstream out;
  out << "graph cpm {\n";
  if (col != nullptr) out << "  node [style=filled];\n";
  for (const Node& n : g.nodes()) {
    out << "  n" << n.id << " [label=\"" << n.id;
    if (!n.label.empty()) out << ':' << n.label;
    out << "\"";
    if (col != nullptr && n.id < col->colors.size()) {
      out << ", fillcolor=" << kFill[static_cast<std::size_t>(col->colors[n.id]) % kFill.size()];
    }
    out << "];\n";
  }
  for (const Edge& e : g.edges()) out << "  n" << e.u << " -- n" << e.v << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace cpm
