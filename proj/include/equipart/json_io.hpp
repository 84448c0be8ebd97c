#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "equipart/graph.hpp"
#include "equipart/matching_forest.hpp"

namespace equipart {

// One experiment file: instance plus optional capacities, part count and
// partition.  Partition parts are element lists, each element referenced by
// kind and index.
struct Instance {
  MixedGraph graph;
  std::optional<CapacityVector> b;
  std::optional<int> k;
  std::optional<std::vector<std::vector<ElementRef>>> partition;
};

// Throws ParseError naming the offending field.
Instance instance_from_json(const nlohmann::json& j);

// Bit-stable: arrays keep input order, keys keep the canonical order
// n, edges, arcs, b, k, partition.
nlohmann::ordered_json instance_to_json(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

// Partition parts as matching forests (edge/arc index split).  Also checks
// that the refs are semantically a partition when `require_partition` is
// set: no duplicates, full coverage.
std::vector<MatchingForest> partition_to_forests(
    const MixedGraph& g, const std::vector<std::vector<ElementRef>>& parts,
    bool require_partition);

std::vector<std::vector<ElementRef>> forests_to_partition(
    const std::vector<MatchingForest>& parts);

// Arc-only views for digraph partitions.
std::vector<ArcSubset> partition_to_arc_subsets(
    const MixedGraph& g, const std::vector<std::vector<ElementRef>>& parts,
    bool require_partition);

std::vector<std::vector<ElementRef>> arc_subsets_to_partition(
    const std::vector<ArcSubset>& parts);

}  // namespace equipart
