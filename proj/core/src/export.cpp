#include "thompson/export.hpp"

#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "thompson/solvability.hpp"

namespace thompson {

namespace {

using nlohmann::ordered_json;

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + '"';
}

std::string core_dot(const CoreAutomaton& core) {
  std::ostringstream out;
  out << "digraph core {\n  node [shape=ellipse];\n";
  for (int e = 0; e < core.edge_count(); ++e) {
    out << "  " << dot_id(core.name(e)) << " [label="
        << dot_id(core.name(e) + " v" + std::to_string(core.iota(e)) + "->v" + std::to_string(core.tau(e)))
        << (e == 0 ? ", peripheries=2" : "") << "];\n";
  }
  for (std::size_t i = 0; i < core.cells().size(); ++i) {
    const Cell& c = core.cells()[i];
    std::string id = dot_id("cell" + std::to_string(i));
    out << "  " << id << " [shape=point];\n";
    out << "  " << dot_id(core.name(c.top)) << " -> " << id << " [arrowhead=none];\n";
    out << "  " << id << " -> " << dot_id(core.name(c.left)) << " [label=\"0\"];\n";
    out << "  " << id << " -> " << dot_id(core.name(c.right)) << " [label=\"1\"];\n";
  }
  out << "}\n";
  return out.str();
}

ordered_json core_json(const CoreAutomaton& core) {
  ordered_json edges = ordered_json::array();
  for (int e = 0; e < core.edge_count(); ++e) {
    edges.push_back({{"id", e}, {"name", core.name(e)}, {"iota", core.iota(e)}, {"tau", core.tau(e)}});
  }
  ordered_json cells = ordered_json::array();
  for (const Cell& c : core.cells()) {
    cells.push_back({{"top", core.name(c.top)}, {"left", core.name(c.left)}, {"right", core.name(c.right)}});
  }
  ordered_json vertices = ordered_json::array();
  for (int v = 0; v < core.vertex_count(); ++v) {
    ordered_json starts = ordered_json::array();
    ordered_json ends = ordered_json::array();
    for (int e = 0; e < core.edge_count(); ++e) {
      if (core.iota(e) == v) starts.push_back(core.name(e));
      if (core.tau(e) == v) ends.push_back(core.name(e));
    }
    vertices.push_back({{"id", v}, {"starts", starts}, {"ends", ends}});
  }
  return {{"edges", edges},
          {"cells", cells},
          {"distinguished", core.name(0)},
          {"initial_vertex", core.initial_vertex()},
          {"terminal_vertex", core.terminal_vertex()},
          {"vertex_classes", vertices}};
}

std::string gamma_dot(const CoreAutomaton& core) {
  GammaGraph g = gamma_graph(core);
  std::ostringstream out;
  out << "digraph gamma {\n";
  for (int v : g.vertices) out << "  " << dot_id(core.name(v)) << ";\n";
  for (auto [a, b] : g.arcs) out << "  " << dot_id(core.name(a)) << " -> " << dot_id(core.name(b)) << ";\n";
  out << "}\n";
  return out.str();
}

ordered_json gamma_json(const CoreAutomaton& core) {
  GammaGraph g = gamma_graph(core);
  ordered_json vertices = ordered_json::array();
  for (int v : g.vertices) vertices.push_back(core.name(v));
  ordered_json arcs = ordered_json::array();
  for (auto [a, b] : g.arcs) arcs.push_back({core.name(a), core.name(b)});
  OrbitCount orbits = dyadic_orbit_count(core);
  return {{"vertices", vertices},
          {"arcs", arcs},
          {"components", weak_components(g.vertices, g.arcs)},
          {"orbits", orbits.infinite ? ordered_json("infinite") : ordered_json(orbits.count)}};
}

std::string pgraph_dot(const CoreAutomaton& core) {
  PGraph g = p_graph(core);
  std::ostringstream out;
  out << "digraph pgraph {\n";
  for (int v : g.vertices) {
    out << "  " << dot_id(core.name(v)) << " [label=" << dot_id(core.name(v) + "\\ns=" + g.trails.at(v))
        << "];\n";
  }
  for (auto [a, b] : g.arcs) out << "  " << dot_id(core.name(a)) << " -> " << dot_id(core.name(b)) << ";\n";
  out << "}\n";
  return out.str();
}

ordered_json pgraph_json(const CoreAutomaton& core) {
  PGraph g = p_graph(core);
  Solvability s = solvability(g);
  ordered_json vertices = ordered_json::array();
  ordered_json trails = ordered_json::object();
  for (int v : g.vertices) {
    vertices.push_back(core.name(v));
    trails[core.name(v)] = g.trails.at(v);
  }
  ordered_json arcs = ordered_json::array();
  for (auto [a, b] : g.arcs) arcs.push_back({core.name(a), core.name(b)});
  return {{"vertices", vertices},
          {"arcs", arcs},
          {"trails", trails},
          {"verdict", s.solvable ? "solvable" : "not_solvable"},
          {"derived_length", s.solvable ? ordered_json(s.derived_length) : ordered_json(nullptr)}};
}

std::string mintree_dot(const LabeledTree& t) {
  std::ostringstream out;
  out << "digraph mintree {\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    out << "  n" << i << " [label=" << dot_id(t.nodes[i].label) << "];\n";
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    if (t.nodes[i].is_leaf()) continue;
    out << "  n" << i << " -> n" << t.nodes[i].left << " [label=\"0\"];\n";
    out << "  n" << i << " -> n" << t.nodes[i].right << " [label=\"1\"];\n";
  }
  out << "}\n";
  return out.str();
}

ordered_json mintree_json(const LabeledTree& t) {
  ordered_json carets = ordered_json::array();
  for (const auto& [top, left, right] : t.carets()) carets.push_back({top, left, right});
  return {{"tree", t.str()}, {"carets", carets}};
}

}  // namespace

ExportTarget parse_export_target(std::string_view name) {
  if (name == "core") return ExportTarget::core;
  if (name == "gamma") return ExportTarget::gamma;
  if (name == "pgraph") return ExportTarget::pgraph;
  if (name == "mintree") return ExportTarget::mintree;
  throw std::invalid_argument("unknown export target " + std::string(name));
}

ExportFormat parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::dot;
  if (name == "json") return ExportFormat::json;
  throw std::invalid_argument("unknown export format " + std::string(name));
}

std::string export_view(const CoreAutomaton& core, ExportTarget target, ExportFormat format) {
  if (format == ExportFormat::dot) {
    switch (target) {
      case ExportTarget::core:
        return core_dot(core);
      case ExportTarget::gamma:
        return gamma_dot(core);
      case ExportTarget::pgraph:
        return pgraph_dot(core);
      case ExportTarget::mintree:
        return mintree_dot(minimal_tree(core));
    }
  }
  ordered_json j{{"schema", 1}};
  switch (target) {
    case ExportTarget::core:
      j.update(core_json(core));
      break;
    case ExportTarget::gamma:
      j.update(gamma_json(core));
      break;
    case ExportTarget::pgraph:
      j.update(pgraph_json(core));
      break;
    case ExportTarget::mintree:
      j.update(mintree_json(minimal_tree(core)));
      break;
  }
  return j.dump(2) + "\n";
}

}  // namespace thompson
