#include <doctest.h>

#include <stdexcept>

#include "equipart/graph.hpp"
#include "equipart/oracle.hpp"

using namespace equipart;

namespace {

VertexSet vs(std::vector<int> v) { return VertexSet(std::move(v)); }

// Independent oracle: pairwise reachability by fixpoint, then the strong
// components as mutual-reachability classes.
std::vector<std::vector<char>> reachability(const Digraph& d) {
  const int n = d.vertex_count();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int v = 0; v < n; ++v) reach[v][v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Arc& a : d.arcs())
      for (int s = 0; s < n; ++s)
        if (reach[s][a.tail] && !reach[s][a.head]) {
          reach[s][a.head] = 1;
          changed = true;
        }
  }
  return reach;
}

std::vector<VertexSet> strong_components_oracle(const Digraph& d) {
  auto reach = reachability(d);
  const int n = d.vertex_count();
  std::vector<char> done(n, 0);
  std::vector<VertexSet> comps;
  for (int v = 0; v < n; ++v) {
    if (done[v]) continue;
    std::vector<int> members;
    for (int w = 0; w < n; ++w)
      if (reach[v][w] && reach[w][v]) {
        members.push_back(w);
        done[w] = 1;
      }
    comps.push_back(VertexSet(std::move(members)));
  }
  return comps;  // discovery by smallest member, so already ordered
}

std::vector<VertexSet> source_components_oracle(const Digraph& d) {
  std::vector<VertexSet> out;
  for (const VertexSet& comp : strong_components_oracle(d)) {
    bool entered = false;
    for (const Arc& a : d.arcs())
      if (comp.contains(a.head) && !comp.contains(a.tail)) entered = true;
    if (!entered) out.push_back(comp);
  }
  return out;
}

Digraph random_digraph(SplitMix64& rng, int n, int arcs) {
  std::vector<Arc> list;
  for (int i = 0; i < arcs; ++i) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n - 1));
    if (v >= u) ++v;
    list.push_back({u, v});
  }
  return Digraph(n, std::move(list));
}

}  // namespace

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(Digraph(2, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Digraph(2, {{0, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(MixedGraph(3, {{1, 1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MixedGraph(3, {{0, 1}}, {{2, 3}}), std::invalid_argument);
  CHECK_NOTHROW(MixedGraph(3, {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}));
}

TEST_CASE("vertex set operations") {
  VertexSet a = vs({3, 1, 3, 0});
  CHECK(a.size() == 3);
  CHECK(a.min() == 0);
  CHECK(a.contains(3));
  CHECK(!a.contains(2));
  VertexSet b = vs({1, 2});
  CHECK(set_union(a, b) == vs({0, 1, 2, 3}));
  CHECK(set_intersection(a, b) == vs({1}));
  CHECK(set_difference(a, b) == vs({0, 3}));
  CHECK(set_symmetric_difference(a, b) == vs({0, 2, 3}));
}

TEST_CASE("strong components") {
  CHECK(strong_components(Digraph(3, {{0, 1}, {1, 0}, {0, 2}})) ==
        std::vector<VertexSet>{vs({0, 1}), vs({2})});
  CHECK(strong_components(Digraph(3, {})) ==
        std::vector<VertexSet>{vs({0}), vs({1}), vs({2})});

  Digraph d(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  CHECK(strong_components(d) == strong_components_oracle(d));
  CHECK(strong_components(d) == std::vector<VertexSet>{vs({0, 1, 2}), vs({3})});
}

TEST_CASE("source components") {
  CHECK(source_components(Digraph(3, {{0, 1}, {1, 0}, {0, 2}})) ==
        std::vector<VertexSet>{vs({0, 1})});
  CHECK(source_components(Digraph(2, {})) ==
        std::vector<VertexSet>{vs({0}), vs({1})});

  Digraph d(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}});
  CHECK(source_components(d) == source_components_oracle(d));
  CHECK(source_components(d) == std::vector<VertexSet>{vs({0, 1})});
}

TEST_CASE("components agree with the reachability oracle on random digraphs") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.below(6));
    Digraph d = random_digraph(rng, n, static_cast<int>(rng.below(2 * n)));
    CHECK(strong_components(d) == strong_components_oracle(d));
    CHECK(source_components(d) == source_components_oracle(d));

    // Every source component has zero entering arcs; every zero-indegree
    // vertex lies in some source component.
    auto sources = source_components(d);
    for (const VertexSet& comp : sources)
      for (const Arc& a : d.arcs())
        CHECK(!(comp.contains(a.head) && !comp.contains(a.tail)));
    IndegreeVector deg(n, 0);
    for (const Arc& a : d.arcs()) ++deg[a.head];
    for (int v = 0; v < n; ++v) {
      if (deg[v] != 0) continue;
      bool found = false;
      for (const VertexSet& comp : sources) found = found || comp.contains(v);
      CHECK(found);
    }
  }
}

TEST_CASE("indegree vector") {
  Digraph d(3, {{0, 1}, {2, 1}, {1, 2}});
  CHECK(indegree_vector(d, {}) == IndegreeVector{0, 0, 0});
  CHECK(indegree_vector(d, {0, 1, 2}) == IndegreeVector{0, 2, 1});

  Digraph parallel(2, {{0, 1}, {0, 1}});
  CHECK(indegree_vector(parallel, {0, 1}) == IndegreeVector{0, 2});

  CHECK_THROWS_AS(indegree_vector(d, {5}), std::invalid_argument);
}

TEST_CASE("indegree vector is additive over disjoint subsets") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));
    Digraph d = random_digraph(rng, n, 1 + static_cast<int>(rng.below(8)));
    ArcSubset first, second;
    for (int a = 0; a < d.arc_count(); ++a)
      (rng.below(2) == 0 ? first : second).push_back(a);
    IndegreeVector combined(n, 0);
    IndegreeVector f = indegree_vector(d, first);
    IndegreeVector s = indegree_vector(d, second);
    for (int v = 0; v < n; ++v) combined[v] = f[v] + s[v];
    ArcSubset all(d.arc_count());
    for (int a = 0; a < d.arc_count(); ++a) all[a] = a;
    CHECK(combined == indegree_vector(d, all));
  }
}
