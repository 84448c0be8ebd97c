#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "equipart/errors.hpp"

namespace equipart {

enum class ElementKind : std::uint8_t { edge, arc };

// Identity of one edge or arc of a mixed graph.  Indices are stable; two
// parallel elements are distinct.
struct ElementRef {
  ElementKind kind;
  int index;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

struct Edge {
  int u, v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
  int tail, head;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Subset of [0, n) with set semantics; elements kept sorted and unique.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<int> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  bool contains(int v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
  }
  void insert(int v) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
    if (it == elems_.end() || *it != v) elems_.insert(it, v);
  }
  void erase(int v) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), v);
    if (it != elems_.end() && *it == v) elems_.erase(it);
  }

  int size() const { return static_cast<int>(elems_.size()); }
  bool empty() const { return elems_.empty(); }
  int min() const { return elems_.front(); }

  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const std::vector<int>& elements() const { return elems_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<int> elems_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b);

// Per-vertex nonnegative integer counts, length n.
using IndegreeVector = std::vector<int>;
// Per-vertex positive integer capacities, length n.
using CapacityVector = std::vector<int>;
// Sorted arc indices into a digraph's arc list.
using ArcSubset = std::vector<int>;
// Sorted edge indices into a mixed graph's edge list.
using EdgeSubset = std::vector<int>;

class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, std::vector<Arc> arcs);

  int vertex_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int i) const;

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

// Vertices, undirected edges and arcs; parallel elements allowed, each
// identified by its index and kind.  Self-loops are rejected.
class MixedGraph {
 public:
  MixedGraph() = default;
  MixedGraph(int n, std::vector<Edge> edges, std::vector<Arc> arcs);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  int element_count() const { return edge_count() + arc_count(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Edge& edge(int i) const;
  const Arc& arc(int i) const;

  // The digraph (V, A) over the same vertex set, edges dropped.
  Digraph arc_digraph() const { return Digraph(n_, arcs_); }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Arc> arcs_;
};

// Strongly connected components, ordered by smallest contained vertex id.
std::vector<VertexSet> strong_components(const Digraph& d);

// Strong components with no arc entering them from outside, in the same
// deterministic order.
std::vector<VertexSet> source_components(const Digraph& d);

// Entry v counts the arcs of `arcs` whose head is v.
IndegreeVector indegree_vector(const Digraph& d, const ArcSubset& arcs);

inline int sum_over(const IndegreeVector& vec, const VertexSet& xs) {
  int s = 0;
  for (int v : xs) s += vec[v];
  return s;
}

}  // namespace equipart
