#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "equipart/b_branching.hpp"
#include "equipart/graph.hpp"
#include "equipart/matching_forest.hpp"

namespace equipart {

// Deterministic 64-bit generator (splitmix64).  Fixed here, rather than a
// standard-library engine, so that instances reproduce bit-for-bit across
// platforms and language ports.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int n = 5;
  int k = 2;
  double edge_density = 0.5;
  double arc_density = 0.5;
  int b_max = 1;
};

struct OracleConfig {
  int element_limit = 20;
  long long node_budget = 50'000'000;
};

// All matching forests of g, in ascending order of the element bitmask
// (edges indexed before arcs).
std::vector<MatchingForest> enumerate_matching_forests(
    const MixedGraph& g, const OracleConfig& cfg = {});

// All arc subsets of d passing is_b_branching, in ascending bitmask order.
std::vector<ArcSubset> enumerate_b_branchings(const Digraph& d,
                                              const CapacityVector& b,
                                              const OracleConfig& cfg = {});

// Verifies the symmetric exchange property of the family of covered vertex
// sets over all matching forests.  A false return indicates a bug in the
// boundary or validity code, never a property of the input.
bool check_delta_matroid(const MixedGraph& g, const OracleConfig& cfg = {});

enum class StructureKind { branching, matching_forest, b_branching };

struct GeneratedInstance {
  MixedGraph graph;
  CapacityVector b;  // all ones unless kind == b_branching
  std::vector<MatchingForest> partition;
};

// Builds k random pairwise-disjoint valid structures and returns their
// union as the instance together with the construction as the initial
// partition, so the partitionability hypothesis holds by construction.
GeneratedInstance generate_partitionable(const GeneratorConfig& config,
                                         StructureKind kind);

enum class GapCriterion { boundary, size, indegree };

// Exact minimum over all partitions of the element set into k valid parts
// of the maximum pairwise gap under the criterion.  Parts are matching
// forests for the boundary criterion and b-branchings otherwise.  Throws
// std::invalid_argument when no partition into k valid parts exists.
int brute_force_min_gap(const MixedGraph& g, const CapacityVector& b, int k,
                        GapCriterion criterion, const OracleConfig& cfg = {});

// Backtracking partition of E u A into k matching forests; the desk-scale
// initializer behind the CLI when no partition is supplied.
std::optional<std::vector<MatchingForest>> partition_into_k_matching_forests(
    const MixedGraph& g, int k, const OracleConfig& cfg = {});

}  // namespace equipart
