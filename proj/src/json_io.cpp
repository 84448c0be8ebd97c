#include "equipart/json_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace equipart {

namespace {

using nlohmann::json;

int require_int(const json& j, const std::string& field) {
  if (!j.is_number_integer())
    throw ParseError(field + ": expected an integer");
  return j.get<int>();
}

std::vector<std::array<int, 2>> require_pair_list(const json& j,
                                                  const std::string& field) {
  if (!j.is_array()) throw ParseError(field + ": expected an array");
  std::vector<std::array<int, 2>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& item = j[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!item.is_array() || item.size() != 2)
      throw ParseError(where + ": expected a pair of vertex ids");
    out.push_back({require_int(item[0], where), require_int(item[1], where)});
  }
  return out;
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (!j.contains("n")) throw ParseError("n: missing field");
  const int n = require_int(j["n"], "n");

  std::vector<Edge> edges;
  if (j.contains("edges"))
    for (auto [u, v] : require_pair_list(j["edges"], "edges"))
      edges.push_back({u, v});
  std::vector<Arc> arcs;
  if (j.contains("arcs"))
    for (auto [t, h] : require_pair_list(j["arcs"], "arcs"))
      arcs.push_back({t, h});

  Instance inst;
  try {
    inst.graph = MixedGraph(n, std::move(edges), std::move(arcs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }

  if (j.contains("b")) {
    if (!j["b"].is_array()) throw ParseError("b: expected an array");
    CapacityVector b;
    for (std::size_t i = 0; i < j["b"].size(); ++i)
      b.push_back(require_int(j["b"][i], "b[" + std::to_string(i) + "]"));
    if (static_cast<int>(b.size()) != n)
      throw ParseError("b: expected " + std::to_string(n) +
                       " entries, got " + std::to_string(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i)
      if (b[i] < 1)
        throw ParseError("b[" + std::to_string(i) +
                         "]: capacity must be positive");
    inst.b = std::move(b);
  }
  if (j.contains("k")) {
    int k = require_int(j["k"], "k");
    if (k < 1) throw ParseError("k: must be positive");
    inst.k = k;
  }
  if (j.contains("partition")) {
    const json& pj = j["partition"];
    if (!pj.is_array()) throw ParseError("partition: expected an array");
    std::vector<std::vector<ElementRef>> parts;
    for (std::size_t p = 0; p < pj.size(); ++p) {
      const std::string pwhere = "partition[" + std::to_string(p) + "]";
      if (!pj[p].is_array())
        throw ParseError(pwhere + ": expected an array of elements");
      std::vector<ElementRef> part;
      for (std::size_t i = 0; i < pj[p].size(); ++i) {
        const std::string where = pwhere + "[" + std::to_string(i) + "]";
        const json& ej = pj[p][i];
        if (!ej.is_object() || !ej.contains("kind") || !ej.contains("index"))
          throw ParseError(where + ": expected {\"kind\", \"index\"}");
        if (!ej["kind"].is_string())
          throw ParseError(where + ".kind: expected \"edge\" or \"arc\"");
        const std::string kind = ej["kind"].get<std::string>();
        const int index = require_int(ej["index"], where + ".index");
        if (kind == "edge") {
          if (index < 0 || index >= inst.graph.edge_count())
            throw ParseError(where + ".index: edge index " +
                             std::to_string(index) + " out of range [0, " +
                             std::to_string(inst.graph.edge_count()) + ")");
          part.push_back({ElementKind::edge, index});
        } else if (kind == "arc") {
          if (index < 0 || index >= inst.graph.arc_count())
            throw ParseError(where + ".index: arc index " +
                             std::to_string(index) + " out of range [0, " +
                             std::to_string(inst.graph.arc_count()) + ")");
          part.push_back({ElementKind::arc, index});
        } else {
          throw ParseError(where + ".kind: expected \"edge\" or \"arc\", got "
                           "\"" + kind + "\"");
        }
      }
      parts.push_back(std::move(part));
    }
    inst.partition = std::move(parts);
  }
  return inst;
}

nlohmann::ordered_json instance_to_json(const Instance& inst) {
  nlohmann::ordered_json j;
  j["n"] = inst.graph.vertex_count();
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : inst.graph.edges()) j["edges"].push_back({e.u, e.v});
  j["arcs"] = nlohmann::ordered_json::array();
  for (const Arc& a : inst.graph.arcs()) j["arcs"].push_back({a.tail, a.head});
  if (inst.b) j["b"] = *inst.b;
  if (inst.k) j["k"] = *inst.k;
  if (inst.partition) {
    nlohmann::ordered_json parts = nlohmann::ordered_json::array();
    for (const auto& part : *inst.partition) {
      nlohmann::ordered_json pj = nlohmann::ordered_json::array();
      for (const ElementRef& el : part)
        pj.push_back({{"kind", el.kind == ElementKind::edge ? "edge" : "arc"},
                      {"index", el.index}});
      parts.push_back(std::move(pj));
    }
    j["partition"] = std::move(parts);
  }
  return j;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": malformed JSON: " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

std::vector<MatchingForest> partition_to_forests(
    const MixedGraph& g, const std::vector<std::vector<ElementRef>>& parts,
    bool require_partition) {
  std::vector<int> owner_e(g.edge_count(), -1), owner_a(g.arc_count(), -1);
  std::vector<MatchingForest> out(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (const ElementRef& el : parts[p]) {
      if (el.kind == ElementKind::edge) {
        detail::require(el.index >= 0 && el.index < g.edge_count(),
                        "partition: edge index " + std::to_string(el.index) +
                            " out of range");
        if (owner_e[el.index] >= 0)
          throw std::invalid_argument(
              "partition: edge " + std::to_string(el.index) +
              " appears in parts " + std::to_string(owner_e[el.index]) +
              " and " + std::to_string(p));
        owner_e[el.index] = static_cast<int>(p);
        out[p].edges.push_back(el.index);
      } else {
        detail::require(el.index >= 0 && el.index < g.arc_count(),
                        "partition: arc index " + std::to_string(el.index) +
                            " out of range");
        if (owner_a[el.index] >= 0)
          throw std::invalid_argument(
              "partition: arc " + std::to_string(el.index) +
              " appears in parts " + std::to_string(owner_a[el.index]) +
              " and " + std::to_string(p));
        owner_a[el.index] = static_cast<int>(p);
        out[p].arcs.push_back(el.index);
      }
    }
  }
  if (require_partition) {
    for (int e = 0; e < g.edge_count(); ++e)
      detail::require(owner_e[e] >= 0, "partition: edge " +
                                           std::to_string(e) +
                                           " missing from all parts");
    for (int a = 0; a < g.arc_count(); ++a)
      detail::require(owner_a[a] >= 0, "partition: arc " +
                                           std::to_string(a) +
                                           " missing from all parts");
  }
  for (MatchingForest& f : out) {
    std::sort(f.edges.begin(), f.edges.end());
    std::sort(f.arcs.begin(), f.arcs.end());
  }
  return out;
}

std::vector<std::vector<ElementRef>> forests_to_partition(
    const std::vector<MatchingForest>& parts) {
  std::vector<std::vector<ElementRef>> out(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int e : parts[p].edges) out[p].push_back({ElementKind::edge, e});
    for (int a : parts[p].arcs) out[p].push_back({ElementKind::arc, a});
  }
  return out;
}

std::vector<ArcSubset> partition_to_arc_subsets(
    const MixedGraph& g, const std::vector<std::vector<ElementRef>>& parts,
    bool require_partition) {
  for (const auto& part : parts)
    for (const ElementRef& el : part)
      detail::require(el.kind == ElementKind::arc,
                      "partition: edge elements are not allowed in an "
                      "arc-only partition");
  std::vector<MatchingForest> forests =
      partition_to_forests(g, parts, require_partition);
  std::vector<ArcSubset> out;
  out.reserve(forests.size());
  for (MatchingForest& f : forests) out.push_back(std::move(f.arcs));
  return out;
}

std::vector<std::vector<ElementRef>> arc_subsets_to_partition(
    const std::vector<ArcSubset>& parts) {
  std::vector<std::vector<ElementRef>> out(parts.size());
  for (std::size_t p = 0; p < parts.size(); ++p)
    for (int a : parts[p]) out[p].push_back({ElementKind::arc, a});
  return out;
}

}  // namespace equipart
