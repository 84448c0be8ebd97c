#include "equipart/graph.hpp"

#include <string>

namespace equipart {

namespace {

void check_endpoint(int v, int n, const char* what, int index) {
  detail::require(v >= 0 && v < n, std::string(what) + "[" +
                                       std::to_string(index) +
                                       "]: vertex " + std::to_string(v) +
                                       " out of range [0, " +
                                       std::to_string(n) + ")");
}

}  // namespace

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return VertexSet(std::move(out));
}

Digraph::Digraph(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  detail::require(n >= 0, "n: vertex count must be nonnegative");
  for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
    check_endpoint(arcs_[i].tail, n_, "arcs", i);
    check_endpoint(arcs_[i].head, n_, "arcs", i);
    detail::require(arcs_[i].tail != arcs_[i].head,
                    "arcs[" + std::to_string(i) + "]: self-loop at vertex " +
                        std::to_string(arcs_[i].tail) + " not allowed");
  }
}

const Arc& Digraph::arc(int i) const {
  detail::require(i >= 0 && i < arc_count(),
                  "arc index " + std::to_string(i) + " out of range");
  return arcs_[i];
}

MixedGraph::MixedGraph(int n, std::vector<Edge> edges, std::vector<Arc> arcs)
    : n_(n), edges_(std::move(edges)), arcs_(std::move(arcs)) {
  detail::require(n >= 0, "n: vertex count must be nonnegative");
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    check_endpoint(edges_[i].u, n_, "edges", i);
    check_endpoint(edges_[i].v, n_, "edges", i);
    detail::require(edges_[i].u != edges_[i].v,
                    "edges[" + std::to_string(i) + "]: self-loop at vertex " +
                        std::to_string(edges_[i].u) + " not allowed");
  }
  for (int i = 0; i < static_cast<int>(arcs_.size()); ++i) {
    check_endpoint(arcs_[i].tail, n_, "arcs", i);
    check_endpoint(arcs_[i].head, n_, "arcs", i);
    detail::require(arcs_[i].tail != arcs_[i].head,
                    "arcs[" + std::to_string(i) + "]: self-loop at vertex " +
                        std::to_string(arcs_[i].tail) + " not allowed");
  }
}

const Edge& MixedGraph::edge(int i) const {
  detail::require(i >= 0 && i < edge_count(),
                  "edge index " + std::to_string(i) + " out of range");
  return edges_[i];
}

const Arc& MixedGraph::arc(int i) const {
  detail::require(i >= 0 && i < arc_count(),
                  "arc index " + std::to_string(i) + " out of range");
  return arcs_[i];
}

// Kosaraju with explicit stacks; component ids are then remapped so that the
// returned order is by smallest contained vertex.
std::vector<VertexSet> strong_components(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<std::vector<int>> out(n), in(n);
  for (const Arc& a : d.arcs()) {
    out[a.tail].push_back(a.head);
    in[a.head].push_back(a.tail);
  }

  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    // pair (vertex, next child position)
    std::vector<std::pair<int, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [v, pos] = stack.back();
      if (pos < out[v].size()) {
        int w = out[v][pos++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<int> stack{*it};
    comp[*it] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : in[v]) {
        if (comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }

  std::vector<std::vector<int>> members(ncomp);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::sort(members.begin(), members.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  std::vector<VertexSet> result;
  result.reserve(ncomp);
  for (auto& m : members) result.emplace_back(std::move(m));
  return result;
}

std::vector<VertexSet> source_components(const Digraph& d) {
  std::vector<VertexSet> comps = strong_components(d);
  const int n = d.vertex_count();
  std::vector<int> comp_of(n, -1);
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    for (int v : comps[c]) comp_of[v] = c;

  std::vector<char> entered(comps.size(), 0);
  for (const Arc& a : d.arcs())
    if (comp_of[a.tail] != comp_of[a.head]) entered[comp_of[a.head]] = 1;

  std::vector<VertexSet> result;
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    if (!entered[c]) result.push_back(std::move(comps[c]));
  return result;
}

IndegreeVector indegree_vector(const Digraph& d, const ArcSubset& arcs) {
  IndegreeVector deg(d.vertex_count(), 0);
  for (int i : arcs) {
    detail::require(i >= 0 && i < d.arc_count(),
                    "arc index " + std::to_string(i) + " out of range");
    ++deg[d.arcs()[i].head];
  }
  return deg;
}

}  // namespace equipart
