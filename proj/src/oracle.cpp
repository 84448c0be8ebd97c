#include "equipart/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace equipart {

namespace {

void check_element_limit(long long count, const OracleConfig& cfg,
                         const char* what) {
  if (count > cfg.element_limit)
    throw SizeLimitError(std::string(what) + ": " + std::to_string(count) +
                         " elements exceed the enumeration limit " +
                         std::to_string(cfg.element_limit));
}

MatchingForest forest_from_mask(const MixedGraph& g, std::uint32_t mask) {
  MatchingForest f;
  for (int e = 0; e < g.edge_count(); ++e)
    if (mask >> e & 1) f.edges.push_back(e);
  for (int a = 0; a < g.arc_count(); ++a)
    if (mask >> (g.edge_count() + a) & 1) f.arcs.push_back(a);
  return f;
}

// Backtracking over element-to-part assignments shared by the brute-force
// oracles.  Validity is downward closed for matching forests and
// b-branchings alike, so partial assignments are pruned as soon as a part
// goes invalid; unused parts are interchangeable, so each element may only
// open one fresh part.
template <typename State, typename AddFn, typename RemoveFn, typename LeafFn>
bool assign_elements(int element_count, int k, long long& budget,
                     std::vector<int>& assignment, int pos, int used,
                     State& state, const AddFn& add, const RemoveFn& remove,
                     const LeafFn& leaf) {
  if (--budget < 0)
    throw SizeLimitError(
        "brute-force search exceeded its node budget; raise the size limit "
        "or shrink the instance");
  if (pos == element_count) return leaf();
  for (int p = 0; p <= used && p < k; ++p) {
    if (!add(state, pos, p)) continue;  // add leaves state untouched on failure
    assignment[pos] = p;
    if (assign_elements(element_count, k, budget, assignment, pos + 1,
                        std::max(used, p + 1), state, add, remove, leaf))
      return true;
    assignment[pos] = -1;
    remove(state, pos, p);
  }
  return false;
}

}  // namespace

std::vector<MatchingForest> enumerate_matching_forests(
    const MixedGraph& g, const OracleConfig& cfg) {
  const int m = g.element_count();
  check_element_limit(m, cfg, "enumerate_matching_forests");

  std::vector<MatchingForest> out;
  std::vector<char> valid(std::size_t{1} << m, 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (mask != 0 && !valid[mask & (mask - 1)]) continue;
    MatchingForest f = forest_from_mask(g, mask);
    if (is_matching_forest(g, f)) {
      valid[mask] = 1;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<ArcSubset> enumerate_b_branchings(const Digraph& d,
                                              const CapacityVector& b,
                                              const OracleConfig& cfg) {
  const int m = d.arc_count();
  check_element_limit(m, cfg, "enumerate_b_branchings");

  std::vector<ArcSubset> out;
  std::vector<char> valid(std::size_t{1} << m, 0);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    if (mask != 0 && !valid[mask & (mask - 1)]) continue;
    ArcSubset s;
    for (int a = 0; a < m; ++a)
      if (mask >> a & 1) s.push_back(a);
    if (is_b_branching(d, b, s)) {
      valid[mask] = 1;
      out.push_back(std::move(s));
    }
  }
  return out;
}

bool check_delta_matroid(const MixedGraph& g, const OracleConfig& cfg) {
  detail::require(g.vertex_count() <= 64,
                  "check_delta_matroid: at most 64 vertices supported");
  std::vector<std::uint64_t> family;
  for (const MatchingForest& f : enumerate_matching_forests(g, cfg)) {
    std::uint64_t mask = 0;
    for (int v : boundary(g, f)) mask |= std::uint64_t{1} << v;
    family.push_back(mask);
  }
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  auto in_family = [&](std::uint64_t mask) {
    return std::binary_search(family.begin(), family.end(), mask);
  };

  for (std::uint64_t u1 : family) {
    for (std::uint64_t u2 : family) {
      std::uint64_t diff = u1 ^ u2;
      for (int u = 0; u < g.vertex_count(); ++u) {
        if (!(diff >> u & 1)) continue;
        bool exchanged = false;
        for (int w = 0; w < g.vertex_count() && !exchanged; ++w) {
          if (!(diff >> w & 1)) continue;
          std::uint64_t swapped =
              u1 ^ (std::uint64_t{1} << u) ^
              (u == w ? 0 : std::uint64_t{1} << w);
          exchanged = in_family(swapped);
        }
        if (!exchanged) return false;
      }
    }
  }
  return true;
}

GeneratedInstance generate_partitionable(const GeneratorConfig& config,
                                         StructureKind kind) {
  detail::require(config.n >= 2, "generator: n must be at least 2");
  detail::require(config.k >= 1, "generator: k must be at least 1");
  detail::require(config.b_max >= 1, "generator: b_max must be at least 1");

  SplitMix64 rng(config.seed);
  const int n = config.n;
  const long long pair_count = static_cast<long long>(n) * (n - 1) / 2;
  const int edge_attempts = std::max<int>(
      1, static_cast<int>(std::lround(config.edge_density * pair_count)));
  const int arc_attempts = std::max<int>(
      1, static_cast<int>(std::lround(config.arc_density * pair_count)));

  while (true) {
    CapacityVector b(n, 1);
    if (kind == StructureKind::b_branching)
      for (int v = 0; v < n; ++v)
        b[v] = 1 + static_cast<int>(rng.below(config.b_max));

    std::vector<Edge> edges;
    std::vector<Arc> arcs;
    std::vector<MatchingForest> parts(config.k);

    auto random_pair = [&]() {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n - 1));
      if (v >= u) ++v;
      return std::pair<int, int>{u, v};
    };

    for (int i = 0; i < config.k; ++i) {
      if (kind == StructureKind::matching_forest) {
        for (int t = 0; t < edge_attempts; ++t) {
          auto [u, v] = random_pair();
          edges.push_back({u, v});
          MatchingForest candidate = parts[i];
          candidate.edges.push_back(static_cast<int>(edges.size()) - 1);
          if (is_matching_forest(MixedGraph(n, edges, arcs), candidate))
            parts[i] = std::move(candidate);
          else
            edges.pop_back();
        }
      }
      for (int t = 0; t < arc_attempts; ++t) {
        auto [u, v] = random_pair();
        arcs.push_back({u, v});
        MatchingForest candidate = parts[i];
        candidate.arcs.push_back(static_cast<int>(arcs.size()) - 1);
        bool ok;
        if (kind == StructureKind::matching_forest) {
          ok = is_matching_forest(MixedGraph(n, edges, arcs), candidate);
        } else {
          ok = is_b_branching(Digraph(n, arcs), b, candidate.arcs);
        }
        if (ok)
          parts[i] = std::move(candidate);
        else
          arcs.pop_back();
      }
    }

    if (edges.empty() && arcs.empty()) continue;  // retry until nonempty
    GeneratedInstance out;
    out.graph = MixedGraph(n, std::move(edges), std::move(arcs));
    out.b = std::move(b);
    out.partition = std::move(parts);
    return out;
  }
}

int brute_force_min_gap(const MixedGraph& g, const CapacityVector& b, int k,
                        GapCriterion criterion, const OracleConfig& cfg) {
  detail::require(k >= 1, "k must be positive");
  if (criterion != GapCriterion::boundary)
    detail::require(g.edge_count() == 0,
                    "size/indegree criteria need an edge-free instance");

  const int m = criterion == GapCriterion::boundary ? g.element_count()
                                                    : g.arc_count();
  const Digraph digraph = g.arc_digraph();
  long long budget = cfg.node_budget;
  std::vector<int> assignment(m, -1);
  std::vector<MatchingForest> parts(k);
  int best = -1;

  auto add = [&](std::vector<MatchingForest>& state, int pos, int p) {
    MatchingForest candidate = state[p];
    if (criterion == GapCriterion::boundary && pos < g.edge_count()) {
      candidate.edges.push_back(pos);
      if (!is_matching_forest(g, candidate)) return false;
    } else {
      int arc = criterion == GapCriterion::boundary ? pos - g.edge_count()
                                                    : pos;
      candidate.arcs.push_back(arc);
      if (criterion == GapCriterion::boundary) {
        if (!is_matching_forest(g, candidate)) return false;
      } else {
        if (!is_b_branching(digraph, b, candidate.arcs)) return false;
      }
    }
    state[p] = std::move(candidate);
    return true;
  };
  auto remove = [&](std::vector<MatchingForest>& state, int pos, int p) {
    if (criterion == GapCriterion::boundary && pos < g.edge_count()) {
      if (!state[p].edges.empty() && state[p].edges.back() == pos)
        state[p].edges.pop_back();
    } else {
      int arc = criterion == GapCriterion::boundary ? pos - g.edge_count()
                                                    : pos;
      if (!state[p].arcs.empty() && state[p].arcs.back() == arc)
        state[p].arcs.pop_back();
    }
  };
  auto leaf = [&]() {
    long long gap = 0;
    if (criterion == GapCriterion::boundary) {
      std::vector<long long> sizes;
      for (const MatchingForest& f : parts)
        sizes.push_back(boundary(g, f).size());
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          gap = std::max(gap, std::abs(sizes[i] - sizes[j]));
    } else if (criterion == GapCriterion::size) {
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          gap = std::max(gap, std::abs(static_cast<long long>(
                                           parts[i].arcs.size()) -
                                       static_cast<long long>(
                                           parts[j].arcs.size())));
    } else {
      std::vector<IndegreeVector> degs;
      for (const MatchingForest& f : parts)
        degs.push_back(indegree_vector(digraph, f.arcs));
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int v = 0; v < g.vertex_count(); ++v)
            gap = std::max(gap, static_cast<long long>(
                                    std::abs(degs[i][v] - degs[j][v])));
    }
    if (best < 0 || gap < best) best = static_cast<int>(gap);
    return best == 0;  // no partition can beat a zero gap
  };

  assign_elements(m, k, budget, assignment, 0, 0, parts, add, remove, leaf);
  detail::require(best >= 0, "no partition into k valid parts exists");
  return best;
}

std::optional<std::vector<MatchingForest>> partition_into_k_matching_forests(
    const MixedGraph& g, int k, const OracleConfig& cfg) {
  detail::require(k >= 1, "k must be positive");
  const int m = g.element_count();
  long long budget = cfg.node_budget;
  std::vector<int> assignment(m, -1);
  std::vector<MatchingForest> parts(k);

  auto add = [&](std::vector<MatchingForest>& state, int pos, int p) {
    MatchingForest candidate = state[p];
    if (pos < g.edge_count())
      candidate.edges.push_back(pos);
    else
      candidate.arcs.push_back(pos - g.edge_count());
    if (!is_matching_forest(g, candidate)) return false;
    state[p] = std::move(candidate);
    return true;
  };
  auto remove = [&](std::vector<MatchingForest>& state, int pos, int p) {
    if (pos < g.edge_count()) {
      if (!state[p].edges.empty() && state[p].edges.back() == pos)
        state[p].edges.pop_back();
    } else {
      int arc = pos - g.edge_count();
      if (!state[p].arcs.empty() && state[p].arcs.back() == arc)
        state[p].arcs.pop_back();
    }
  };
  auto leaf = [&]() { return true; };

  if (assign_elements(m, k, budget, assignment, 0, 0, parts, add, remove,
                      leaf))
    return parts;
  return std::nullopt;
}

}  // namespace equipart
