#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "equipart/graph.hpp"

namespace equipart {

// B is a branching iff every vertex has at most one entering arc of B and
// the underlying undirected graph of B is acyclic.
bool is_branching(const Digraph& d, const ArcSubset& b);

// R(B) = V minus the heads of B.  Requires is_branching(d, b).
VertexSet branching_roots(const Digraph& d, const ArcSubset& b);

// Prescribed root sets for repartitioning two branchings that share an arc
// set: r1 and r2 must cover R(B1) union R(B2) and intersect exactly in
// R(B1) intersection R(B2).
struct RootSpec {
  VertexSet r1;
  VertexSet r2;
};

struct BranchingConfig {
  // Feasibility of residual root sets is decided by scanning all vertex
  // subsets up to this vertex count and by min-cut computations above it.
  int exhaustive_vertex_limit = 16;
};

// Partitions the arcs of d into branchings B_i with roots(B_i) == roots[i].
// Requires sum over i of (n - |roots[i]|) == |A|, so that a feasible family
// necessarily uses every arc.  Returns nullopt when no such family exists.
std::optional<std::vector<ArcSubset>> disjoint_branchings_with_roots(
    const Digraph& d, const std::vector<VertexSet>& roots,
    const BranchingConfig& cfg = {});

// Re-splits the arcs of b1 and b2 into two branchings with the prescribed
// root sets.  Returns nullopt exactly when some source component of
// (V, b1 union b2) misses spec.r1 or spec.r2.
std::optional<std::pair<ArcSubset, ArcSubset>> repartition_two_branchings(
    const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
    const RootSpec& spec, const BranchingConfig& cfg = {});

struct LoopStats {
  long long iterations = 0;
  long long initial_potential = 0;
  long long final_potential = 0;
};

// Given a partition of the arcs of d into k branchings, returns a partition
// into k branchings whose sizes are all floor(|A|/k) or ceil(|A|/k).
std::vector<ArcSubset> equitable_branching_partition(
    const Digraph& d, std::vector<ArcSubset> initial,
    const BranchingConfig& cfg = {}, LoopStats* stats = nullptr);

}  // namespace equipart
