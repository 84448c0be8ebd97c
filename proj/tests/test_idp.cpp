#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "equipart/idp.hpp"
#include "equipart/oracle.hpp"

using namespace equipart;

TEST_CASE("multigraph expansion") {
  Digraph d(3, {{0, 1}, {1, 2}});
  SUBCASE("zero vector") {
    CHECK(expand_multigraph(d, {0, 0}).graph.arc_count() == 0);
  }
  SUBCASE("all ones copies the digraph") {
    ExpandedDigraph e = expand_multigraph(d, {1, 1});
    CHECK(e.graph.arcs() == d.arcs());
    CHECK(e.origin == std::vector<int>{0, 1});
  }
  SUBCASE("multiplicity three") {
    ExpandedDigraph e = expand_multigraph(Digraph(2, {{0, 1}}), {3});
    CHECK(e.graph.arc_count() == 3);
    CHECK(e.origin == std::vector<int>{0, 0, 0});
  }
  SUBCASE("negative entries rejected") {
    CHECK_THROWS_AS(expand_multigraph(d, {1, -1}), std::invalid_argument);
  }
}

TEST_CASE("partition into k b-branchings") {
  SUBCASE("two parallel arcs split across two parts") {
    Digraph d(2, {{0, 1}, {0, 1}});
    auto parts = partition_into_k_bbranchings(d, {1, 1}, 2);
    REQUIRE(parts.has_value());
    CHECK(parts->size() == 2);
    CHECK((*parts)[0].size() == 1);
    CHECK((*parts)[1].size() == 1);
  }
  SUBCASE("two-cycle with unit b refuted for k=1") {
    Digraph d(2, {{0, 1}, {1, 0}});
    CHECK_FALSE(partition_into_k_bbranchings(d, {1, 1}, 1));
  }
  SUBCASE("generated unions always admit a partition") {
    for (int trial = 0; trial < 60; ++trial) {
      GeneratorConfig config;
      config.seed = 90000 + trial;
      config.n = 2 + trial % 4;
      config.k = 1 + trial % 3;
      config.b_max = 2;
      auto gen = generate_partitionable(config, StructureKind::b_branching);
      Digraph d = gen.graph.arc_digraph();
      if (d.arc_count() > 16) continue;
      auto parts = partition_into_k_bbranchings(d, gen.b, config.k);
      REQUIRE(parts.has_value());
      std::vector<char> seen(d.arc_count(), 0);
      for (const ArcSubset& part : *parts) {
        CHECK(is_b_branching(d, gen.b, part));
        for (int a : part) {
          CHECK(!seen[a]);
          seen[a] = 1;
        }
      }
      CHECK(std::count(seen.begin(), seen.end(), 1) == d.arc_count());
    }
  }
}

TEST_CASE("decompose") {
  SUBCASE("kappa=1 returns the vector itself") {
    Digraph d(3, {{0, 1}, {1, 2}});
    IdpQuery q;
    q.kappa = 1;
    auto parts = decompose(d, {1, 1, 1}, {1, 1}, q);
    REQUIRE(parts.has_value());
    CHECK(*parts == std::vector<ArcVector>{{1, 1}});
  }
  SUBCASE("doubled path splits into two full copies") {
    Digraph d(3, {{0, 1}, {1, 2}});
    IdpQuery q;
    q.kappa = 2;
    q.ell = 2;
    auto parts = decompose(d, {1, 1, 1}, {2, 2}, q);
    REQUIRE(parts.has_value());
    CHECK((*parts)[0] == ArcVector{1, 1});
    CHECK((*parts)[1] == ArcVector{1, 1});
  }
  SUBCASE("size divisibility is a precondition") {
    Digraph d(3, {{0, 1}, {1, 2}});
    IdpQuery q;
    q.kappa = 2;
    q.ell = 1;
    CHECK_THROWS_AS(decompose(d, {1, 1, 1}, {2, 1}, q),
                    std::invalid_argument);
  }
  SUBCASE("indegree divisibility is a precondition") {
    Digraph d(2, {{0, 1}});
    IdpQuery q;
    q.kappa = 2;
    q.vprime = {1};
    q.bprime = {1};
    CHECK_THROWS_AS(decompose(d, {1, 2}, {1}, q), std::invalid_argument);
  }
  SUBCASE("vectors outside kappa P are infeasible") {
    // x loads two copies of a two-cycle; no split into two b-branchings
    // exists because each side would need the full cycle.
    Digraph d(2, {{0, 1}, {1, 0}});
    IdpQuery q;
    q.kappa = 2;
    CHECK_FALSE(decompose(d, {1, 1}, {2, 2}, q).has_value());
  }
}

TEST_CASE("decompose round-trips generated sums") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    GeneratorConfig config;
    config.seed = 110000 + trial;
    config.n = 2 + trial % 4;
    config.k = 1 + trial % 3;
    config.b_max = 2;
    config.arc_density = 0.5;
    auto gen = generate_partitionable(config, StructureKind::b_branching);
    Digraph d = gen.graph.arc_digraph();
    const int kappa = config.k;

    // Trim the generated parts to a common size; subsets of b-branchings
    // stay valid, so the sum is kappa times a size-ell incidence vector.
    std::size_t ell = gen.partition[0].arcs.size();
    for (const auto& f : gen.partition) ell = std::min(ell, f.arcs.size());
    if (ell == 0) continue;
    std::vector<ArcSubset> parts;
    for (const auto& f : gen.partition) {
      ArcSubset part = f.arcs;
      while (part.size() > ell)
        part.erase(part.begin() + static_cast<long>(rng.below(part.size())));
      parts.push_back(std::move(part));
    }

    ArcVector x(d.arc_count(), 0);
    for (const ArcSubset& part : parts)
      for (int a : part) ++x[a];

    // V' = vertices on which all parts agree.
    std::vector<IndegreeVector> degs;
    for (const ArcSubset& part : parts)
      degs.push_back(indegree_vector(d, part));
    IdpQuery q;
    q.kappa = kappa;
    q.ell = static_cast<int>(ell);
    for (int v = 0; v < d.vertex_count(); ++v) {
      bool agree = true;
      for (int i = 1; i < kappa; ++i) agree = agree && degs[i][v] == degs[0][v];
      if (agree && rng.below(2) == 0) {
        q.vprime.push_back(v);
        q.bprime.push_back(degs[0][v]);
      }
    }

    auto result = decompose(d, gen.b, x, q);
    REQUIRE(result.has_value());
    ArcVector sum(d.arc_count(), 0);
    for (const ArcVector& part : *result) {
      long long size = 0;
      for (int a = 0; a < d.arc_count(); ++a) {
        sum[a] += part[a];
        size += part[a];
      }
      CHECK(size == static_cast<long long>(ell));
      // each part must be a valid b-branching over the host digraph
      ExpandedDigraph ed = expand_multigraph(d, part);
      ArcSubset all(ed.graph.arc_count());
      for (int a = 0; a < ed.graph.arc_count(); ++a) all[a] = a;
      CHECK(is_b_branching(ed.graph, gen.b, all));
      IndegreeVector deg = indegree_vector(ed.graph, all);
      for (std::size_t i = 0; i < q.vprime.size(); ++i)
        CHECK(deg[q.vprime[i]] == q.bprime[i]);
    }
    CHECK(sum == x);
  }
}
