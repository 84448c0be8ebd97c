#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "equipart/branchings.hpp"
#include "equipart/graph.hpp"

namespace equipart {

// Maximal vertex set C in which every vertex v attains internal indegree
// exactly b(v); empty iff |B[X]| <= b(X) - 1 holds for every nonempty X.
// Requires the indegrees of `b_set` to respect the caps.
VertexSet tight_core(const Digraph& d, const CapacityVector& b,
                     const ArcSubset& b_set);

// d^-(v) <= b(v) everywhere and empty tight core.
bool is_b_branching(const Digraph& d, const CapacityVector& b,
                    const ArcSubset& b_set);

// Prescribed per-vertex indegrees for repartitioning two b-branchings.
struct TargetPair {
  IndegreeVector b1;
  IndegreeVector b2;
};

struct BbConfig {
  // Exhaustive split search is attempted when the pair's union has at most
  // this many arcs and the exchange search got stuck.  The exchange moves
  // cannot always reach an improving split (saturated vertices can box the
  // search in), and the head-grouped backtracking stays well under a second
  // at this size, so the bound is sized to cover desk-scale pair unions.
  int fallback_threshold = 48;
  // States explored per improvement step of the exchange search.
  long long exchange_node_limit = 2000000;
};

// Parity-balanced halving of the pair's indegree vectors: per vertex the
// targets differ by at most one, per source component of the union the
// component sums obey the even/odd rules, and the global sums differ by at
// most one.  The result always satisfies the repartition feasibility
// condition.
TargetPair build_indegree_targets(const Digraph& d, const ArcSubset& b1,
                                  const ArcSubset& b2,
                                  const CapacityVector& b);

// Re-splits the arcs of b1 and b2 into two b-branchings with the exact
// prescribed indegree vectors.  Returns nullopt exactly when some source
// component X of the union has targets.b1(X) >= b(X) or
// targets.b2(X) >= b(X).
std::optional<std::pair<ArcSubset, ArcSubset>> repartition_two_bbranchings(
    const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
    const CapacityVector& b, const TargetPair& targets,
    const BbConfig& cfg = {});

// Sum over parts of the distance of |B_i| from {floor(|A|/k), ceil(|A|/k)}
// plus, per vertex, the distance of d^-_{B_i}(v) from the analogous pair of
// indegree targets.
long long b_potential(const Digraph& d, const CapacityVector& b,
                      const std::vector<ArcSubset>& parts, int k);

// Given a partition of the arcs of d into k b-branchings, returns a
// partition whose part sizes and per-vertex indegrees all attain the
// floor/ceil bounds simultaneously.
std::vector<ArcSubset> equitable_b_partition(const Digraph& d,
                                             const CapacityVector& b, int k,
                                             std::vector<ArcSubset> initial,
                                             const BbConfig& cfg = {},
                                             LoopStats* stats = nullptr);

}  // namespace equipart
