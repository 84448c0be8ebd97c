#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "equipart/b_branching.hpp"
#include "equipart/oracle.hpp"

using namespace equipart;

namespace {

VertexSet vs(std::vector<int> v) { return VertexSet(std::move(v)); }

// Exhaustive sparsity oracle: some nonempty X with |B[X]| >= b(X)?
bool sparsity_violated(const Digraph& d, const CapacityVector& b,
                       const ArcSubset& arcs) {
  const int n = d.vertex_count();
  REQUIRE(n <= 20);
  for (std::uint32_t x = 1; x < (std::uint32_t{1} << n); ++x) {
    int induced = 0, cap = 0;
    for (int v = 0; v < n; ++v)
      if (x >> v & 1) cap += b[v];
    for (int a : arcs)
      if ((x >> d.arcs()[a].tail & 1) && (x >> d.arcs()[a].head & 1))
        ++induced;
    if (induced >= cap) return true;
  }
  return false;
}

// Exhaustive oracle for the two-sided repartition: any 2-coloring meeting
// the exact indegree targets with both sides valid?
bool split_with_targets_exists(const Digraph& d, const ArcSubset& arcs,
                               const CapacityVector& b,
                               const TargetPair& targets) {
  const int m = static_cast<int>(arcs.size());
  REQUIRE(m <= 20);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    ArcSubset s1, s2;
    for (int i = 0; i < m; ++i) (mask >> i & 1 ? s1 : s2).push_back(arcs[i]);
    if (indegree_vector(d, s1) != targets.b1) continue;
    if (indegree_vector(d, s2) != targets.b2) continue;
    if (is_b_branching(d, b, s1) && is_b_branching(d, b, s2)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("tight core") {
  SUBCASE("empty set") {
    Digraph d(3, {{0, 1}});
    CHECK(tight_core(d, {1, 1, 1}, {}).empty());
  }
  SUBCASE("two-cycle saturates both vertices") {
    Digraph d(2, {{0, 1}, {1, 0}});
    CHECK(tight_core(d, {1, 1}, {0, 1}) == vs({0, 1}));
  }
  SUBCASE("triangle-like set with slack capacity") {
    // No subset violates sparsity here, so the core must be empty; the
    // exhaustive scan pins the expected value.
    Digraph d(3, {{0, 1}, {2, 1}, {1, 2}});
    CapacityVector b{1, 2, 1};
    CHECK_FALSE(sparsity_violated(d, b, {0, 1, 2}));
    CHECK(tight_core(d, b, {0, 1, 2}).empty());
  }
  SUBCASE("precondition on indegree caps") {
    Digraph d(2, {{0, 1}, {0, 1}});
    CHECK_THROWS_AS(tight_core(d, {1, 1}, {0, 1}), std::invalid_argument);
  }
}

TEST_CASE("tight core characterizes sparsity on random instances") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + static_cast<int>(rng.below(5));
    std::vector<Arc> arcs;
    int m = static_cast<int>(rng.below(2 * n + 1));
    for (int i = 0; i < m; ++i) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n - 1));
      if (v >= u) ++v;
      arcs.push_back({u, v});
    }
    Digraph d(n, arcs);
    CapacityVector b(n);
    for (int v = 0; v < n; ++v) b[v] = 1 + static_cast<int>(rng.below(3));

    ArcSubset subset;
    IndegreeVector deg(n, 0);
    for (int a = 0; a < m; ++a)
      if (rng.below(2) == 0 && deg[d.arcs()[a].head] < b[d.arcs()[a].head]) {
        subset.push_back(a);
        ++deg[d.arcs()[a].head];
      }
    CHECK(tight_core(d, b, subset).empty() == !sparsity_violated(d, b, subset));
  }
}

TEST_CASE("b-branching validity") {
  SUBCASE("parallel arcs under capacity") {
    Digraph d(2, {{0, 1}, {0, 1}});
    CHECK(is_b_branching(d, {2, 2}, {0, 1}));
  }
  SUBCASE("two-cycle with unit capacities") {
    Digraph d(2, {{0, 1}, {1, 0}});
    CHECK_FALSE(is_b_branching(d, {1, 1}, {0, 1}));
  }
  SUBCASE("unit capacities reduce to branchings") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
      int n = 2 + static_cast<int>(rng.below(6));
      std::vector<Arc> arcs;
      int m = static_cast<int>(rng.below(2 * n + 1));
      for (int i = 0; i < m; ++i) {
        int u = static_cast<int>(rng.below(n));
        int v = static_cast<int>(rng.below(n - 1));
        if (v >= u) ++v;
        arcs.push_back({u, v});
      }
      Digraph d(n, arcs);
      ArcSubset subset;
      for (int a = 0; a < m; ++a)
        if (rng.below(2) == 0) subset.push_back(a);
      CHECK(is_b_branching(d, CapacityVector(n, 1), subset) ==
            is_branching(d, subset));
    }
  }
}

TEST_CASE("indegree targets") {
  SUBCASE("equal pairs stay fixed") {
    Digraph d(3, {{0, 1}, {0, 1}, {0, 2}, {0, 2}});
    CapacityVector b{1, 2, 2};
    TargetPair t = build_indegree_targets(d, {0, 2}, {1, 3}, b);
    CHECK(t.b1 == IndegreeVector{0, 1, 1});
    CHECK(t.b2 == IndegreeVector{0, 1, 1});
  }
  SUBCASE("odd vertex splits one apart") {
    Digraph d(2, {{0, 1}, {0, 1}, {0, 1}});
    CapacityVector b{1, 3};
    TargetPair t = build_indegree_targets(d, {0, 1}, {2}, b);
    CHECK(t.b1[1] + t.b2[1] == 3);
    CHECK(std::abs(t.b1[1] - t.b2[1]) == 1);
  }
  SUBCASE("invariants hold on generated pairs") {
    for (int trial = 0; trial < 200; ++trial) {
      GeneratorConfig config;
      config.seed = 40000 + trial;
      config.n = 2 + trial % 5;
      config.k = 2;
      config.b_max = 3;
      config.arc_density = 0.8;
      auto gen = generate_partitionable(config, StructureKind::b_branching);
      Digraph d = gen.graph.arc_digraph();
      const ArcSubset& b1 = gen.partition[0].arcs;
      const ArcSubset& b2 = gen.partition[1].arcs;
      // build_indegree_targets checks its own postconditions; also confirm
      // it always passes the repartition feasibility test.
      TargetPair t = build_indegree_targets(d, b1, b2, gen.b);
      CHECK(repartition_two_bbranchings(d, b1, b2, gen.b, t).has_value());
    }
  }
}

TEST_CASE("repartition of two b-branchings") {
  SUBCASE("single-arc split meets the targets") {
    Digraph d(2, {{0, 1}, {0, 1}});
    CapacityVector b{1, 2};
    TargetPair t{{0, 1}, {0, 1}};
    auto out = repartition_two_bbranchings(d, {0, 1}, {}, b, t);
    REQUIRE(out.has_value());
    CHECK(out->first.size() == 1);
    CHECK(out->second.size() == 1);
  }
  SUBCASE("infeasible when a component sum reaches b(X)") {
    Digraph d(2, {{0, 1}, {1, 0}});
    CapacityVector b{1, 1};
    TargetPair t{{1, 1}, {0, 0}};
    CHECK_FALSE(repartition_two_bbranchings(d, {0}, {1}, b, t));
  }
  SUBCASE("target sum must match the union indegrees") {
    Digraph d(2, {{0, 1}, {0, 1}});
    CapacityVector b{1, 2};
    TargetPair t{{0, 2}, {0, 1}};
    CHECK_THROWS_AS(repartition_two_bbranchings(d, {0, 1}, {}, b, t),
                    std::invalid_argument);
  }
}

TEST_CASE("repartition agrees with the exhaustive oracle") {
  SplitMix64 rng(47);
  int exercised = 0;
  for (int trial = 0; trial < 300; ++trial) {
    GeneratorConfig config;
    config.seed = 60000 + trial;
    config.n = 2 + static_cast<int>(rng.below(3));
    config.k = 2;
    config.b_max = 2;
    config.arc_density = 0.4 + 0.2 * rng.below(3);
    auto gen = generate_partitionable(config, StructureKind::b_branching);
    Digraph d = gen.graph.arc_digraph();
    if (d.arc_count() > 8) continue;
    const ArcSubset& b1 = gen.partition[0].arcs;
    const ArcSubset& b2 = gen.partition[1].arcs;

    IndegreeVector deg = indegree_vector(d, b1);
    for (int a : b2) ++deg[d.arcs()[a].head];
    TargetPair t;
    t.b1.assign(d.vertex_count(), 0);
    t.b2.assign(d.vertex_count(), 0);
    for (int v = 0; v < d.vertex_count(); ++v) {
      int lo = std::max(0, deg[v] - gen.b[v]);
      int hi = std::min(deg[v], gen.b[v]);
      t.b1[v] = lo + static_cast<int>(rng.below(hi - lo + 1));
      t.b2[v] = deg[v] - t.b1[v];
    }

    ArcSubset arcs;
    for (int a : b1) arcs.push_back(a);
    for (int a : b2) arcs.push_back(a);
    std::sort(arcs.begin(), arcs.end());
    auto result = repartition_two_bbranchings(d, b1, b2, gen.b, t);
    CHECK(result.has_value() ==
          split_with_targets_exists(d, arcs, gen.b, t));
    ++exercised;

    if (result) {
      CHECK(indegree_vector(d, result->first) == t.b1);
      CHECK(indegree_vector(d, result->second) == t.b2);
      CHECK(is_b_branching(d, gen.b, result->first));
      CHECK(is_b_branching(d, gen.b, result->second));
    }
  }
  CHECK(exercised >= 100);
}

TEST_CASE("b potential") {
  SUBCASE("already equitable partition scores zero") {
    Digraph d(2, {{0, 1}, {0, 1}, {0, 1}});
    CapacityVector b{1, 2};
    CHECK(b_potential(d, b, {{0, 1}, {2}}, 2) == 0);
    CHECK(b_potential(d, b, {{0}, {1}, {2}}, 3) == 0);
  }
  SUBCASE("all-in-one split of three parallel arcs") {
    Digraph d(2, {{0, 1}, {0, 1}, {0, 1}});
    CapacityVector b{1, 3};
    // independent recomputation: sizes 3 and 0 against {1, 2}, indegrees
    // 3 and 0 at the single head against {1, 2}
    long long expected = (3 - 2) + (1 - 0) + (3 - 2) + (1 - 0);
    CHECK(b_potential(d, b, {{0, 1, 2}, {}}, 2) == expected);
  }
  SUBCASE("k=1 is always zero") {
    Digraph d(3, {{0, 1}, {1, 2}});
    CHECK(b_potential(d, {1, 1, 1}, {{0, 1}}, 1) == 0);
  }
}

TEST_CASE("equitable b-branching partition") {
  SUBCASE("already equitable input returned unchanged") {
    Digraph d(2, {{0, 1}, {0, 1}, {0, 1}});
    CapacityVector b{1, 2};
    std::vector<ArcSubset> initial{{0, 1}, {2}};
    CHECK(equitable_b_partition(d, b, 2, initial) == initial);
  }
  SUBCASE("k=1 returns the input") {
    Digraph d(3, {{0, 1}, {1, 2}});
    std::vector<ArcSubset> initial{{0, 1}};
    CHECK(equitable_b_partition(d, {1, 1, 1}, 1, initial) == initial);
  }
  SUBCASE("dense instances that box in the exchange search") {
    // Pair unions past the exchange search's reach must fall back to the
    // complete split search instead of stalling.
    for (std::uint64_t seed : {301, 342, 366, 496}) {
      GeneratorConfig config;
      config.seed = seed;
      config.n = 8;
      config.k = 3;
      config.b_max = 4;
      config.arc_density = 1.5;
      auto gen = generate_partitionable(config, StructureKind::b_branching);
      Digraph d = gen.graph.arc_digraph();
      std::vector<ArcSubset> initial;
      for (const auto& f : gen.partition) initial.push_back(f.arcs);
      auto parts = equitable_b_partition(d, gen.b, 3, initial);
      const int total = d.arc_count();
      for (const ArcSubset& part : parts) {
        CHECK(part.size() >= static_cast<std::size_t>(total / 3));
        CHECK(part.size() <= static_cast<std::size_t>((total + 2) / 3));
      }
    }
  }
  SUBCASE("floor/ceil conditions hold on generated instances") {
    for (int trial = 0; trial < 60; ++trial) {
      GeneratorConfig config;
      config.seed = 80000 + trial;
      config.n = 2 + trial % 5;
      config.k = 2 + trial % 2;
      config.b_max = 3;
      config.arc_density = 0.7;
      auto gen = generate_partitionable(config, StructureKind::b_branching);
      Digraph d = gen.graph.arc_digraph();
      std::vector<ArcSubset> initial;
      for (const auto& f : gen.partition) initial.push_back(f.arcs);

      LoopStats stats;
      auto parts = equitable_b_partition(d, gen.b, config.k, initial, {},
                                         &stats);
      CHECK(stats.final_potential <= stats.initial_potential);

      const int k = config.k;
      const int total = d.arc_count();
      IndegreeVector full(d.vertex_count(), 0);
      for (const Arc& a : d.arcs()) ++full[a.head];
      for (const ArcSubset& part : parts) {
        CHECK(is_b_branching(d, gen.b, part));
        int sz = static_cast<int>(part.size());
        CHECK(sz >= total / k);
        CHECK(sz <= (total + k - 1) / k);
        IndegreeVector deg = indegree_vector(d, part);
        for (int v = 0; v < d.vertex_count(); ++v) {
          CHECK(deg[v] >= full[v] / k);
          CHECK(deg[v] <= (full[v] + k - 1) / k);
        }
      }
    }
  }
}
