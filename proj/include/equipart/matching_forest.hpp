#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "equipart/branchings.hpp"
#include "equipart/graph.hpp"

namespace equipart {

// F = M union B with M a matching, B a branching and disjoint boundaries.
// Edge and arc indices refer to the host mixed graph and stay sorted.
struct MatchingForest {
  EdgeSubset edges;
  ArcSubset arcs;

  friend bool operator==(const MatchingForest&, const MatchingForest&) =
      default;
};

bool is_matching_forest(const MixedGraph& g, const MatchingForest& f);

// Vertices covered by f: both endpoints of every edge, the head of every
// arc.
VertexSet boundary(const MixedGraph& g, const MatchingForest& f);

// Auxiliary undirected graph H = (V, M1 u M2 u N) whose path components
// drive the boundary-balancing swap.  N holds one vertex pair per
// multi-vertex source component of (V, B1 u B2), joining a root of B1 to a
// root of B2 inside that component.
struct ExchangeGraph {
  enum class Label { from_m1, from_m2, from_n };
  struct HEdge {
    int u, v;
    Label label;
    int edge_index;  // host edge index for from_m1/from_m2, -1 for from_n
  };
  int n = 0;
  std::vector<HEdge> edges;
};

ExchangeGraph build_exchange_graph(const MixedGraph& g,
                                   const MatchingForest& f1,
                                   const MatchingForest& f2);

// A path component of H, oriented so that vertices.front() is the chosen
// endpoint in boundary(F1) minus boundary(F2).  h_edges holds indices into
// ExchangeGraph::edges; empty for a single-vertex path.
struct SwapPath {
  std::vector<int> vertices;
  std::vector<int> h_edges;
};

// Selects a path component with one endpoint u in bd1 minus bd2 whose other
// endpoint lies in bd1 (or with u isolated).  Deterministic: the smallest
// eligible endpoint id wins.  Returns nullopt when no such path exists,
// which is legal only while the boundary gap is at most 2.
std::optional<SwapPath> find_swap_path(const ExchangeGraph& h,
                                       const VertexSet& bd1,
                                       const VertexSet& bd2);

// Applies the symmetric-difference update along p and repartitions the arcs
// of f1 and f2 to the recombined root sets.  The result is two matching
// forests carrying exactly the elements of f1 and f2.
std::pair<MatchingForest, MatchingForest> swap_along_path(
    const MixedGraph& g, const MatchingForest& f1, const MatchingForest& f2,
    const ExchangeGraph& h, const SwapPath& p,
    const BranchingConfig& cfg = {});

// Sum over part pairs of | |boundary(F_i)| - |boundary(F_j)| |.
long long mf_potential(const MixedGraph& g,
                       const std::vector<MatchingForest>& parts);

// Given a partition of E u A into k matching forests, returns a partition
// whose pairwise boundary-size gaps are all at most 2.  Each swap decreases
// mf_potential by at least 2.
std::vector<MatchingForest> equitable_mf_partition(
    const MixedGraph& g, std::vector<MatchingForest> initial,
    const BranchingConfig& cfg = {}, LoopStats* stats = nullptr);

}  // namespace equipart
