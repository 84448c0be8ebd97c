#pragma once

#include <optional>
#include <vector>

#include "equipart/b_branching.hpp"
#include "equipart/graph.hpp"

namespace equipart {

// Nonnegative integer per arc of the host digraph.
using ArcVector = std::vector<int>;

// Decomposition query: split x into kappa b-branchings, each of size ell
// (when given) and with indegree bprime[i] at vprime[i] for every listed
// vertex.
struct IdpQuery {
  int kappa = 1;
  std::optional<int> ell;
  std::vector<int> vprime;  // sorted vertex ids
  std::vector<int> bprime;  // aligned with vprime
};

struct IdpConfig {
  // Backtracking over arc assignments is complete up to this many expanded
  // arcs; above it the search runs under a node budget and reports
  // SizeLimitError instead of a proven negative.
  int complete_bound = 24;
  long long node_budget = 50'000'000;
  BbConfig bb;
};

struct ExpandedDigraph {
  Digraph graph;
  std::vector<int> origin;  // origin[i] = host arc index of expanded arc i
};

// Replaces each arc a by x[a] parallel copies.
ExpandedDigraph expand_multigraph(const Digraph& d, const ArcVector& x);

// Backtracking partition of the arcs of d into k b-branchings.  Returns the
// partition, or nullopt when exhaustively refuted.  Throws SizeLimitError
// when |A| exceeds the complete bound and the budgeted search was cut off
// before finding an answer.
std::optional<std::vector<ArcSubset>> partition_into_k_bbranchings(
    const Digraph& d, const CapacityVector& b, int k,
    const IdpConfig& cfg = {});

// Integer decomposition of x into q.kappa b-branching incidence vectors
// meeting the query's size and indegree conditions exactly.  Returns
// nullopt when the expanded multigraph admits no kappa-partition, i.e. x is
// not in kappa times the polytope.
std::optional<std::vector<ArcVector>> decompose(const Digraph& d,
                                                const CapacityVector& b,
                                                const ArcVector& x,
                                                const IdpQuery& q,
                                                const IdpConfig& cfg = {});

}  // namespace equipart
