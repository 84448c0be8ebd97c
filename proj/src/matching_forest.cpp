#include "equipart/matching_forest.hpp"

#include <algorithm>
#include <string>

namespace equipart {

namespace {

void validate_forest_indices(const MixedGraph& g, const MatchingForest& f,
                             const char* name) {
  std::vector<char> seen_e(g.edge_count(), 0), seen_a(g.arc_count(), 0);
  for (int e : f.edges) {
    detail::require(e >= 0 && e < g.edge_count(),
                    std::string(name) + ": edge index " + std::to_string(e) +
                        " out of range");
    detail::require(!seen_e[e], std::string(name) + ": edge index " +
                                    std::to_string(e) + " listed twice");
    seen_e[e] = 1;
  }
  for (int a : f.arcs) {
    detail::require(a >= 0 && a < g.arc_count(),
                    std::string(name) + ": arc index " + std::to_string(a) +
                        " out of range");
    detail::require(!seen_a[a], std::string(name) + ": arc index " +
                                    std::to_string(a) + " listed twice");
    seen_a[a] = 1;
  }
}

VertexSet matching_boundary(const MixedGraph& g, const EdgeSubset& m) {
  std::vector<int> vs;
  for (int e : m) {
    vs.push_back(g.edges()[e].u);
    vs.push_back(g.edges()[e].v);
  }
  return VertexSet(std::move(vs));
}

VertexSet branching_boundary(const MixedGraph& g, const ArcSubset& b) {
  std::vector<int> vs;
  for (int a : b) vs.push_back(g.arcs()[a].head);
  return VertexSet(std::move(vs));
}

}  // namespace

bool is_matching_forest(const MixedGraph& g, const MatchingForest& f) {
  validate_forest_indices(g, f, "matching forest");
  std::vector<char> matched(g.vertex_count(), 0);
  for (int e : f.edges) {
    if (matched[g.edges()[e].u] || matched[g.edges()[e].v]) return false;
    matched[g.edges()[e].u] = 1;
    matched[g.edges()[e].v] = 1;
  }
  if (!is_branching(g.arc_digraph(), f.arcs)) return false;
  for (int a : f.arcs)
    if (matched[g.arcs()[a].head]) return false;
  return true;
}

VertexSet boundary(const MixedGraph& g, const MatchingForest& f) {
  validate_forest_indices(g, f, "boundary");
  return set_union(matching_boundary(g, f.edges),
                   branching_boundary(g, f.arcs));
}

ExchangeGraph build_exchange_graph(const MixedGraph& g,
                                   const MatchingForest& f1,
                                   const MatchingForest& f2) {
  detail::require(is_matching_forest(g, f1), "f1 is not a matching forest");
  detail::require(is_matching_forest(g, f2), "f2 is not a matching forest");
  {
    std::vector<char> in2_e(g.edge_count(), 0), in2_a(g.arc_count(), 0);
    for (int e : f2.edges) in2_e[e] = 1;
    for (int a : f2.arcs) in2_a[a] = 1;
    for (int e : f1.edges)
      detail::require(!in2_e[e],
                      "f1 and f2 share edge index " + std::to_string(e));
    for (int a : f1.arcs)
      detail::require(!in2_a[a],
                      "f1 and f2 share arc index " + std::to_string(a));
  }

  ExchangeGraph h;
  h.n = g.vertex_count();
  for (int e : f1.edges)
    h.edges.push_back({g.edges()[e].u, g.edges()[e].v,
                       ExchangeGraph::Label::from_m1, e});
  for (int e : f2.edges)
    h.edges.push_back({g.edges()[e].u, g.edges()[e].v,
                       ExchangeGraph::Label::from_m2, e});

  const Digraph digraph = g.arc_digraph();
  const VertexSet r1 = branching_roots(digraph, f1.arcs);
  const VertexSet r2 = branching_roots(digraph, f2.arcs);

  std::vector<Arc> union_arcs;
  for (int a : f1.arcs) union_arcs.push_back(g.arcs()[a]);
  for (int a : f2.arcs) union_arcs.push_back(g.arcs()[a]);
  for (const VertexSet& comp :
       source_components(Digraph(g.vertex_count(), std::move(union_arcs)))) {
    if (comp.size() < 2) continue;
    VertexSet c1 = set_intersection(comp, r1);
    VertexSet c2 = set_intersection(comp, r2);
    detail::internal_check(!c1.empty() && !c2.empty(),
                           "multi-vertex source component misses a root set");
    h.edges.push_back({c1.min(), c2.min(), ExchangeGraph::Label::from_n, -1});
  }

  // Every vertex has degree at most two, and degree-two vertices are
  // covered by both forests.
  std::vector<int> degree(h.n, 0);
  for (const auto& e : h.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  const VertexSet bd1 = boundary(g, f1);
  const VertexSet bd2 = boundary(g, f2);
  for (int v = 0; v < h.n; ++v) {
    detail::internal_check(degree[v] <= 2,
                           "exchange graph degree exceeds two");
    if (degree[v] == 2)
      detail::internal_check(bd1.contains(v) && bd2.contains(v),
                             "degree-two vertex not covered by both forests");
  }
  return h;
}

std::optional<SwapPath> find_swap_path(const ExchangeGraph& h,
                                       const VertexSet& bd1,
                                       const VertexSet& bd2) {
  const int n = h.n;
  std::vector<std::vector<int>> inc(n);  // incident h-edge indices
  for (int i = 0; i < static_cast<int>(h.edges.size()); ++i) {
    inc[h.edges[i].u].push_back(i);
    inc[h.edges[i].v].push_back(i);
  }

  // Component scan; a component is a path iff it has one fewer edge than
  // vertices (isolated vertices are single-vertex paths).
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comp_vertices;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int id = static_cast<int>(comp_vertices.size());
    comp_vertices.emplace_back();
    std::vector<int> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp_vertices[id].push_back(v);
      for (int ei : inc[v]) {
        int w = h.edges[ei].u == v ? h.edges[ei].v : h.edges[ei].u;
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<int> comp_edges(comp_vertices.size(), 0);
  for (const auto& e : h.edges) ++comp_edges[comp[e.u]];

  int best_start = n;
  for (int c = 0; c < static_cast<int>(comp_vertices.size()); ++c) {
    const auto& vs = comp_vertices[c];
    if (comp_edges[c] != static_cast<int>(vs.size()) - 1) continue;  // cycle
    for (int v : vs) {
      if (inc[v].size() >= 2) continue;  // internal vertex
      if (!(bd1.contains(v) && !bd2.contains(v))) continue;
      if (inc[v].size() == 1) {
        // locate the other endpoint of this path
        int other = -1;
        for (int w : vs)
          if (w != v && inc[w].size() <= 1) other = w;
        if (other < 0 || !bd1.contains(other)) continue;
      }
      best_start = std::min(best_start, v);
    }
  }
  if (best_start == n) return std::nullopt;

  SwapPath p;
  p.vertices.push_back(best_start);
  int prev_edge = -1;
  int cur = best_start;
  while (true) {
    int next_edge = -1;
    for (int ei : inc[cur])
      if (ei != prev_edge) next_edge = ei;
    if (next_edge < 0) break;
    cur = h.edges[next_edge].u == cur ? h.edges[next_edge].v
                                      : h.edges[next_edge].u;
    p.h_edges.push_back(next_edge);
    p.vertices.push_back(cur);
    prev_edge = next_edge;
  }
  return p;
}

std::pair<MatchingForest, MatchingForest> swap_along_path(
    const MixedGraph& g, const MatchingForest& f1, const MatchingForest& f2,
    const ExchangeGraph& h, const SwapPath& p, const BranchingConfig& cfg) {
  std::vector<char> drop1(g.edge_count(), 0), drop2(g.edge_count(), 0);
  EdgeSubset gain1, gain2;
  for (int ei : p.h_edges) {
    const auto& he = h.edges[ei];
    if (he.label == ExchangeGraph::Label::from_m1) {
      drop1[he.edge_index] = 1;
      gain2.push_back(he.edge_index);
    } else if (he.label == ExchangeGraph::Label::from_m2) {
      drop2[he.edge_index] = 1;
      gain1.push_back(he.edge_index);
    }
  }
  MatchingForest out1, out2;
  for (int e : f1.edges)
    if (!drop1[e]) out1.edges.push_back(e);
  for (int e : gain1) out1.edges.push_back(e);
  for (int e : f2.edges)
    if (!drop2[e]) out2.edges.push_back(e);
  for (int e : gain2) out2.edges.push_back(e);
  std::sort(out1.edges.begin(), out1.edges.end());
  std::sort(out2.edges.begin(), out2.edges.end());

  const VertexSet path_vertices(p.vertices);
  const Digraph digraph = g.arc_digraph();
  const VertexSet r1 = branching_roots(digraph, f1.arcs);
  const VertexSet r2 = branching_roots(digraph, f2.arcs);
  RootSpec spec;
  spec.r1 = set_union(set_difference(r1, path_vertices),
                      set_intersection(r2, path_vertices));
  spec.r2 = set_union(set_difference(r2, path_vertices),
                      set_intersection(r1, path_vertices));

  auto repart = repartition_two_branchings(digraph, f1.arcs, f2.arcs, spec,
                                           cfg);
  detail::internal_check(repart.has_value(),
                         "swap produced infeasible root sets");
  out1.arcs = std::move(repart->first);
  out2.arcs = std::move(repart->second);

  detail::internal_check(is_matching_forest(g, out1) &&
                             is_matching_forest(g, out2),
                         "swap produced an invalid matching forest");
  detail::internal_check(
      out1.edges.size() + out2.edges.size() ==
              f1.edges.size() + f2.edges.size() &&
          out1.arcs.size() + out2.arcs.size() ==
              f1.arcs.size() + f2.arcs.size(),
      "swap changed the element count");
  return {std::move(out1), std::move(out2)};
}

long long mf_potential(const MixedGraph& g,
                       const std::vector<MatchingForest>& parts) {
  std::vector<long long> sizes;
  sizes.reserve(parts.size());
  for (const MatchingForest& f : parts) {
    detail::require(is_matching_forest(g, f),
                    "potential: part is not a matching forest");
    sizes.push_back(boundary(g, f).size());
  }
  long long total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (std::size_t j = i + 1; j < sizes.size(); ++j)
      total += std::abs(sizes[i] - sizes[j]);
  return total;
}

std::vector<MatchingForest> equitable_mf_partition(
    const MixedGraph& g, std::vector<MatchingForest> initial,
    const BranchingConfig& cfg, LoopStats* stats) {
  const int k = static_cast<int>(initial.size());
  detail::require(k >= 1, "initial: at least one part required");
  std::vector<char> seen_e(g.edge_count(), 0), seen_a(g.arc_count(), 0);
  for (const MatchingForest& f : initial) {
    detail::require(is_matching_forest(g, f),
                    "initial: part is not a matching forest");
    for (int e : f.edges) {
      detail::require(!seen_e[e], "initial: edge index " + std::to_string(e) +
                                      " appears in two parts");
      seen_e[e] = 1;
    }
    for (int a : f.arcs) {
      detail::require(!seen_a[a], "initial: arc index " + std::to_string(a) +
                                      " appears in two parts");
      seen_a[a] = 1;
    }
  }
  for (int e = 0; e < g.edge_count(); ++e)
    detail::require(seen_e[e], "initial: edge index " + std::to_string(e) +
                                   " missing from all parts");
  for (int a = 0; a < g.arc_count(); ++a)
    detail::require(seen_a[a], "initial: arc index " + std::to_string(a) +
                                   " missing from all parts");

  if (stats) {
    stats->initial_potential = mf_potential(g, initial);
    stats->iterations = 0;
  }

  while (true) {
    std::vector<long long> bsize;
    for (const MatchingForest& f : initial)
      bsize.push_back(boundary(g, f).size());

    int best_i = -1, best_j = -1;
    long long best_gap = 2;  // only gaps >= 3 qualify
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        if (std::abs(bsize[i] - bsize[j]) > best_gap) {
          best_gap = std::abs(bsize[i] - bsize[j]);
          best_i = i;
          best_j = j;
        }
    if (best_i < 0) break;

    // Normalize so the first part of the pair has the larger boundary.
    int hi = bsize[best_i] >= bsize[best_j] ? best_i : best_j;
    int lo = hi == best_i ? best_j : best_i;

    const long long before = mf_potential(g, initial);
    ExchangeGraph h = build_exchange_graph(g, initial[hi], initial[lo]);
    auto path = find_swap_path(h, boundary(g, initial[hi]),
                               boundary(g, initial[lo]));
    detail::internal_check(path.has_value(),
                           "no swap path although the boundary gap is >= 3");
    auto [new_hi, new_lo] =
        swap_along_path(g, initial[hi], initial[lo], h, *path, cfg);
    initial[hi] = std::move(new_hi);
    initial[lo] = std::move(new_lo);

    detail::internal_check(mf_potential(g, initial) <= before - 2,
                           "swap decreased the potential by less than 2");
    if (stats) ++stats->iterations;
  }

  if (stats) stats->final_potential = mf_potential(g, initial);
  return initial;
}

}  // namespace equipart
