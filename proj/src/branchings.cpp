#include "equipart/branchings.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>

namespace equipart {

namespace {

// ---------------------------------------------------------------------------
// Small unit-capacity Dinic solver, used only for the residual feasibility
// test on instances too large for the exhaustive subset scan.

class Dinic {
 public:
  explicit Dinic(int n) : head_(n, -1) {}

  void add_edge(int from, int to, int cap) {
    edges_.push_back({to, head_[from], cap});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  int max_flow(int s, int t, int enough) {
    int flow = 0;
    while (flow < enough && bfs(s, t)) {
      iter_ = head_;
      while (flow < enough) {
        int f = dfs(s, t, enough - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

 private:
  struct E {
    int to, next, cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[v]; e >= 0; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[v] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  int dfs(int v, int t, int budget) {
    if (v == t) return budget;
    for (int& e = iter_[v]; e >= 0; e = edges_[e].next) {
      E& ed = edges_[e];
      if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
        int f = dfs(ed.to, t, std::min(budget, ed.cap));
        if (f > 0) {
          ed.cap -= f;
          edges_[e ^ 1].cap += f;
          return f;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<E> edges_;
};

// Edmonds' cut condition: every nonempty X must have at least as many
// entering arcs (among the alive ones) as there are root sets disjoint
// from X.
bool packing_feasible(const Digraph& d, const std::vector<char>& alive,
                      const std::vector<VertexSet>& roots,
                      const BranchingConfig& cfg) {
  const int n = d.vertex_count();
  const int k = static_cast<int>(roots.size());
  if (n == 0) return true;

  if (n <= cfg.exhaustive_vertex_limit) {
    std::vector<std::uint64_t> root_mask(k, 0);
    for (int i = 0; i < k; ++i)
      for (int v : roots[i]) root_mask[i] |= std::uint64_t{1} << v;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> arc_bits;
    for (int a = 0; a < d.arc_count(); ++a)
      if (alive[a])
        arc_bits.emplace_back(std::uint64_t{1} << d.arcs()[a].tail,
                              std::uint64_t{1} << d.arcs()[a].head);

    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t x = 1; x <= full; ++x) {
      int demand = 0;
      for (int i = 0; i < k; ++i)
        if ((root_mask[i] & x) == 0) ++demand;
      if (demand == 0) continue;
      int indeg = 0;
      for (const auto& [tail, head] : arc_bits) {
        if ((head & x) != 0 && (tail & x) == 0 && ++indeg >= demand) break;
      }
      if (indeg < demand) return false;
    }
    return true;
  }

  // Min-cut formulation: add a source s and one node per root set i with
  // cap(s -> i) = 1 and effectively infinite capacity from i into R_i; the
  // condition holds iff s reaches every vertex with flow value k.
  const int source = n + k;
  for (int v = 0; v < n; ++v) {
    Dinic dinic(n + k + 1);
    for (int a = 0; a < d.arc_count(); ++a)
      if (alive[a]) dinic.add_edge(d.arcs()[a].tail, d.arcs()[a].head, 1);
    for (int i = 0; i < k; ++i) {
      dinic.add_edge(source, n + i, 1);
      for (int r : roots[i]) dinic.add_edge(n + i, r, k + 1);
    }
    if (dinic.max_flow(source, v, k) < k) return false;
  }
  return true;
}

void validate_subset(const Digraph& d, const ArcSubset& b, const char* name) {
  std::vector<char> seen(d.arc_count(), 0);
  for (int a : b) {
    detail::require(a >= 0 && a < d.arc_count(),
                    std::string(name) + ": arc index " + std::to_string(a) +
                        " out of range");
    detail::require(!seen[a], std::string(name) + ": arc index " +
                                  std::to_string(a) + " listed twice");
    seen[a] = 1;
  }
}

long long pairwise_size_potential(const std::vector<ArcSubset>& parts) {
  long long total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      total += std::abs(static_cast<long long>(parts[i].size()) -
                        static_cast<long long>(parts[j].size()));
  return total;
}

}  // namespace

bool is_branching(const Digraph& d, const ArcSubset& b) {
  validate_subset(d, b, "branching");
  const int n = d.vertex_count();
  std::vector<int> indeg(n, 0);
  for (int a : b)
    if (++indeg[d.arcs()[a].head] > 1) return false;

  // Indegree <= 1 everywhere, so underlying acyclicity is the only cycle
  // check needed.
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int a : b) {
    int x = find(d.arcs()[a].tail);
    int y = find(d.arcs()[a].head);
    if (x == y) return false;
    parent[x] = y;
  }
  return true;
}

VertexSet branching_roots(const Digraph& d, const ArcSubset& b) {
  detail::require(is_branching(d, b), "roots: arc set is not a branching");
  std::vector<char> covered(d.vertex_count(), 0);
  for (int a : b) covered[d.arcs()[a].head] = 1;
  std::vector<int> roots;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (!covered[v]) roots.push_back(v);
  return VertexSet(std::move(roots));
}

std::optional<std::vector<ArcSubset>> disjoint_branchings_with_roots(
    const Digraph& d, const std::vector<VertexSet>& roots,
    const BranchingConfig& cfg) {
  const int n = d.vertex_count();
  const int k = static_cast<int>(roots.size());
  detail::require(k >= 1, "roots: at least one root set required");
  long long covered = 0;
  for (const VertexSet& r : roots) {
    for (int v : r)
      detail::require(v >= 0 && v < n, "roots: vertex " + std::to_string(v) +
                                           " out of range");
    covered += n - r.size();
  }
  detail::require(covered == d.arc_count(),
                  "roots: sum of (n - |R_i|) is " + std::to_string(covered) +
                      " but |A| is " + std::to_string(d.arc_count()));

  std::vector<char> alive(d.arc_count(), 1);
  {
    std::vector<VertexSet> residual(roots.begin(), roots.end());
    if (!packing_feasible(d, alive, residual, cfg)) return std::nullopt;
  }

  std::vector<ArcSubset> result(k);
  for (int i = 0; i < k; ++i) {
    VertexSet reached = roots[i];
    while (reached.size() < n) {
      int chosen = -1;
      for (int a = 0; a < d.arc_count() && chosen < 0; ++a) {
        if (!alive[a]) continue;
        const Arc& arc = d.arcs()[a];
        if (!reached.contains(arc.tail) || reached.contains(arc.head))
          continue;
        alive[a] = 0;
        std::vector<VertexSet> residual;
        residual.push_back(reached);
        residual.back().insert(arc.head);
        for (int j = i + 1; j < k; ++j) residual.push_back(roots[j]);
        if (packing_feasible(d, alive, residual, cfg))
          chosen = a;
        else
          alive[a] = 1;
      }
      detail::internal_check(chosen >= 0,
                             "branching construction found no extendable arc "
                             "on a feasible instance");
      result[i].push_back(chosen);
      reached.insert(d.arcs()[chosen].head);
    }
    std::sort(result[i].begin(), result[i].end());
  }

  for (char a : alive)
    detail::internal_check(!a, "branching construction left an arc unused");
  return result;
}

std::optional<std::pair<ArcSubset, ArcSubset>> repartition_two_branchings(
    const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
    const RootSpec& spec, const BranchingConfig& cfg) {
  detail::require(is_branching(d, b1), "b1 is not a branching");
  detail::require(is_branching(d, b2), "b2 is not a branching");
  {
    std::vector<char> in_b2(d.arc_count(), 0);
    for (int a : b2) in_b2[a] = 1;
    for (int a : b1)
      detail::require(!in_b2[a],
                      "b1 and b2 share arc index " + std::to_string(a));
  }

  const VertexSet r1 = branching_roots(d, b1);
  const VertexSet r2 = branching_roots(d, b2);
  detail::require(set_union(spec.r1, spec.r2) == set_union(r1, r2),
                  "root spec: union differs from R(B1) union R(B2)");
  detail::require(set_intersection(spec.r1, spec.r2) ==
                      set_intersection(r1, r2),
                  "root spec: intersection differs from R(B1) cap R(B2)");

  // Local digraph over the union arcs, remembering host indices.
  std::vector<int> host_index;
  std::vector<Arc> arcs;
  for (int a : b1) {
    host_index.push_back(a);
    arcs.push_back(d.arcs()[a]);
  }
  for (int a : b2) {
    host_index.push_back(a);
    arcs.push_back(d.arcs()[a]);
  }
  Digraph sub(d.vertex_count(), std::move(arcs));

  for (const VertexSet& comp : source_components(sub)) {
    if (set_intersection(comp, spec.r1).empty() ||
        set_intersection(comp, spec.r2).empty())
      return std::nullopt;
  }

  auto parts = disjoint_branchings_with_roots(sub, {spec.r1, spec.r2}, cfg);
  detail::internal_check(parts.has_value(),
                         "repartition feasible by source components but "
                         "packing failed");

  std::pair<ArcSubset, ArcSubset> out;
  for (int a : (*parts)[0]) out.first.push_back(host_index[a]);
  for (int a : (*parts)[1]) out.second.push_back(host_index[a]);
  std::sort(out.first.begin(), out.first.end());
  std::sort(out.second.begin(), out.second.end());
  return out;
}

std::vector<ArcSubset> equitable_branching_partition(
    const Digraph& d, std::vector<ArcSubset> initial,
    const BranchingConfig& cfg, LoopStats* stats) {
  const int k = static_cast<int>(initial.size());
  detail::require(k >= 1, "initial: at least one part required");
  std::vector<char> seen(d.arc_count(), 0);
  for (const ArcSubset& part : initial) {
    detail::require(is_branching(d, part), "initial: part is not a branching");
    for (int a : part) {
      detail::require(!seen[a], "initial: arc index " + std::to_string(a) +
                                    " appears in two parts");
      seen[a] = 1;
    }
  }
  for (int a = 0; a < d.arc_count(); ++a)
    detail::require(seen[a], "initial: arc index " + std::to_string(a) +
                                 " missing from all parts");

  const long long total = d.arc_count();
  if (stats) {
    stats->initial_potential = pairwise_size_potential(initial);
    stats->iterations = 0;
  }

  while (true) {
    // Violating pair: sizes differ by >= 2 and straddle |A|/k.
    int best_i = -1, best_j = -1;
    long long best_gap = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        long long si = initial[i].size(), sj = initial[j].size();
        long long lo = std::min(si, sj), hi = std::max(si, sj);
        if (hi - lo >= 2 && lo * k < total && total < hi * k &&
            hi - lo > best_gap) {
          best_gap = hi - lo;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0) break;

    const long long before = pairwise_size_potential(initial);
    const ArcSubset& p1 = initial[best_i];
    const ArcSubset& p2 = initial[best_j];
    const VertexSet r1 = branching_roots(d, p1);
    const VertexSet r2 = branching_roots(d, p2);

    // Balanced root sets: each multi-vertex source component of the union
    // keeps its minimum-id root on both sides; the remaining exchangeable
    // roots go greedily to the side with fewer roots.
    std::vector<Arc> union_arcs;
    for (int a : p1) union_arcs.push_back(d.arcs()[a]);
    for (int a : p2) union_arcs.push_back(d.arcs()[a]);
    Digraph sub(d.vertex_count(), std::move(union_arcs));

    VertexSet shared = set_intersection(r1, r2);
    VertexSet new_r1 = shared, new_r2 = shared;
    VertexSet reserved;
    for (const VertexSet& comp : source_components(sub)) {
      if (comp.size() < 2) continue;
      VertexSet c1 = set_intersection(comp, r1);
      VertexSet c2 = set_intersection(comp, r2);
      detail::internal_check(!c1.empty() && !c2.empty(),
                             "multi-vertex source component misses a side's "
                             "roots");
      new_r1.insert(c1.min());
      new_r2.insert(c2.min());
      reserved.insert(c1.min());
      reserved.insert(c2.min());
    }
    for (int v : set_difference(set_symmetric_difference(r1, r2), reserved)) {
      if (new_r1.size() <= new_r2.size())
        new_r1.insert(v);
      else
        new_r2.insert(v);
    }

    auto repart =
        repartition_two_branchings(d, p1, p2, {new_r1, new_r2}, cfg);
    detail::internal_check(repart.has_value(),
                           "balanced root sets were infeasible");
    initial[best_i] = std::move(repart->first);
    initial[best_j] = std::move(repart->second);

    detail::internal_check(pairwise_size_potential(initial) < before,
                           "rebalance did not decrease the size potential");
    if (stats) ++stats->iterations;
  }

  if (stats) stats->final_potential = pairwise_size_potential(initial);
  return initial;
}

}  // namespace equipart
