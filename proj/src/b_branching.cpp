#include "equipart/b_branching.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_set>

namespace equipart {

namespace {

void validate_capacities(const Digraph& d, const CapacityVector& b) {
  detail::require(static_cast<int>(b.size()) == d.vertex_count(),
                  "b: expected " + std::to_string(d.vertex_count()) +
                      " entries, got " + std::to_string(b.size()));
  for (int v = 0; v < d.vertex_count(); ++v)
    detail::require(b[v] >= 1, "b[" + std::to_string(v) +
                                   "]: capacity must be positive");
}

void validate_arc_subset(const Digraph& d, const ArcSubset& s,
                         const char* name) {
  std::vector<char> seen(d.arc_count(), 0);
  for (int a : s) {
    detail::require(a >= 0 && a < d.arc_count(),
                    std::string(name) + ": arc index " + std::to_string(a) +
                        " out of range");
    detail::require(!seen[a], std::string(name) + ": arc index " +
                                  std::to_string(a) + " listed twice");
    seen[a] = 1;
  }
}

long long dist_to_floor_ceil(long long x, long long total, long long k) {
  long long lo = total / k;
  long long hi = (total + k - 1) / k;
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0;
}

// ---------------------------------------------------------------------------
// Exchange search used by repartition_two_bbranchings.  States are splits of
// the union arcs; a step either shifts an arc toward its head's target side
// or, when the shift left a nonempty tight core on the receiving side,
// shifts some arc headed inside that core back the other way.

struct SplitContext {
  const Digraph* sub;
  const CapacityVector* b;
  const IndegreeVector* target1;  // exact indegrees wanted on side 0
};

IndegreeVector side_indegrees(const SplitContext& ctx,
                              const std::vector<std::uint8_t>& side,
                              int which) {
  IndegreeVector deg(ctx.sub->vertex_count(), 0);
  for (int a = 0; a < ctx.sub->arc_count(); ++a)
    if (side[a] == which) ++deg[ctx.sub->arcs()[a].head];
  return deg;
}

long long split_deviation(const SplitContext& ctx,
                          const std::vector<std::uint8_t>& side) {
  IndegreeVector deg = side_indegrees(ctx, side, 0);
  long long phi = 0;
  for (int v = 0; v < ctx.sub->vertex_count(); ++v)
    phi += std::abs(static_cast<long long>(deg[v]) - (*ctx.target1)[v]);
  return phi;
}

VertexSet side_core(const SplitContext& ctx,
                    const std::vector<std::uint8_t>& side, int which) {
  ArcSubset arcs;
  for (int a = 0; a < ctx.sub->arc_count(); ++a)
    if (side[a] == which) arcs.push_back(a);
  return tight_core(*ctx.sub, *ctx.b, arcs);
}

std::optional<std::vector<std::uint8_t>> find_improving_split(
    const SplitContext& ctx, const std::vector<std::uint8_t>& start,
    long long node_limit, bool relaxed) {
  const long long phi0 = split_deviation(ctx, start);
  std::deque<std::vector<std::uint8_t>> queue{start};
  std::unordered_set<std::string> visited{
      std::string(start.begin(), start.end())};
  long long nodes = 0;

  while (!queue.empty() && nodes < node_limit) {
    std::vector<std::uint8_t> s = std::move(queue.front());
    queue.pop_front();
    ++nodes;

    IndegreeVector deg0 = side_indegrees(ctx, s, 0);
    VertexSet core0 = side_core(ctx, s, 0);
    VertexSet core1 = side_core(ctx, s, 1);

    if (core0.empty() && core1.empty() &&
        split_deviation(ctx, s) < phi0)
      return s;

    std::vector<int> moves;
    if (core0.empty() && core1.empty()) {
      // Shift an arc across at a vertex that is off target.  The relaxed
      // tier also permits cap-respecting shifts at on-target vertices,
      // which some instances need to vacate a saturated vertex first.
      IndegreeVector deg1 = side_indegrees(ctx, s, 1);
      for (int a = 0; a < ctx.sub->arc_count(); ++a) {
        int v = ctx.sub->arcs()[a].head;
        bool toward_target = (s[a] == 0 && deg0[v] > (*ctx.target1)[v]) ||
                             (s[a] == 1 && deg0[v] < (*ctx.target1)[v]);
        bool cap_ok = s[a] == 0 ? deg1[v] + 1 <= (*ctx.b)[v]
                                : deg0[v] + 1 <= (*ctx.b)[v];
        if (toward_target || (relaxed && cap_ok)) moves.push_back(a);
      }
    } else {
      // Repair: move an arc headed inside a tight core off that side,
      // provided the receiving side keeps its indegree caps.
      IndegreeVector deg1 = side_indegrees(ctx, s, 1);
      for (int a = 0; a < ctx.sub->arc_count(); ++a) {
        int v = ctx.sub->arcs()[a].head;
        if (s[a] == 0 && core0.contains(v) && deg1[v] + 1 <= (*ctx.b)[v])
          moves.push_back(a);
        if (s[a] == 1 && core1.contains(v) && deg0[v] + 1 <= (*ctx.b)[v])
          moves.push_back(a);
      }
    }

    for (int a : moves) {
      std::vector<std::uint8_t> next = s;
      next[a] ^= 1;
      std::string key(next.begin(), next.end());
      if (visited.insert(std::move(key)).second)
        queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

// Complete split search grouped by head vertex: side 0 takes exactly
// target1[v] of the arcs entering v.  Tightness is monotone under adding
// arcs, so partial splits with a nonempty core on either side are pruned.
class ExhaustiveSplit {
 public:
  ExhaustiveSplit(const SplitContext& ctx) : ctx_(ctx) {
    const int n = ctx.sub->vertex_count();
    by_head_.resize(n);
    for (int a = 0; a < ctx.sub->arc_count(); ++a)
      by_head_[ctx.sub->arcs()[a].head].push_back(a);
    side_.assign(ctx.sub->arc_count(), 1);
  }

  std::optional<std::vector<std::uint8_t>> run() {
    if (solve(0)) return side_;
    return std::nullopt;
  }

 private:
  bool solve(int v) {
    const int n = ctx_.sub->vertex_count();
    if (v == n) return true;
    const auto& arcs = by_head_[v];
    const int take = (*ctx_.target1)[v];
    const int deg = static_cast<int>(arcs.size());
    if (take > deg) return false;

    std::vector<int> pick(take);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      for (int a : arcs) side_[a] = 1;
      for (int i : pick) side_[arcs[i]] = 0;
      if (prefix_ok(v) && solve(v + 1)) return true;

      // next combination
      int i = take - 1;
      while (i >= 0 && pick[i] == deg - take + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < take; ++j) pick[j] = pick[j - 1] + 1;
    }
    for (int a : arcs) side_[a] = 1;
    return false;
  }

  bool prefix_ok(int last_head) {
    ArcSubset s0, s1;
    for (int h = 0; h <= last_head; ++h)
      for (int a : by_head_[h]) (side_[a] == 0 ? s0 : s1).push_back(a);
    return tight_core(*ctx_.sub, *ctx_.b, s0).empty() &&
           tight_core(*ctx_.sub, *ctx_.b, s1).empty();
  }

  const SplitContext& ctx_;
  std::vector<std::vector<int>> by_head_;
  std::vector<std::uint8_t> side_;
};

}  // namespace

VertexSet tight_core(const Digraph& d, const CapacityVector& b,
                     const ArcSubset& b_set) {
  validate_capacities(d, b);
  validate_arc_subset(d, b_set, "tight_core");
  const int n = d.vertex_count();
  IndegreeVector deg = indegree_vector(d, b_set);
  for (int v = 0; v < n; ++v)
    detail::require(deg[v] <= b[v],
                    "tight_core: indegree at vertex " + std::to_string(v) +
                        " exceeds b");

  // Peel vertices whose internal indegree falls below b(v).
  std::vector<char> in_core(n, 1);
  IndegreeVector internal = deg;  // all endpoints start inside
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (internal[v] < b[v]) {
      in_core[v] = 0;
      queue.push_back(v);
    }
  std::vector<std::vector<int>> out_arcs(n);
  for (int a : b_set) out_arcs[d.arcs()[a].tail].push_back(a);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    for (int a : out_arcs[v]) {
      int h = d.arcs()[a].head;
      if (in_core[h] && --internal[h] < b[h]) {
        in_core[h] = 0;
        queue.push_back(h);
      }
    }
  }
  std::vector<int> members;
  for (int v = 0; v < n; ++v)
    if (in_core[v]) members.push_back(v);
  return VertexSet(std::move(members));
}

bool is_b_branching(const Digraph& d, const CapacityVector& b,
                    const ArcSubset& b_set) {
  validate_capacities(d, b);
  validate_arc_subset(d, b_set, "is_b_branching");
  IndegreeVector deg = indegree_vector(d, b_set);
  for (int v = 0; v < d.vertex_count(); ++v)
    if (deg[v] > b[v]) return false;
  return tight_core(d, b, b_set).empty();
}

TargetPair build_indegree_targets(const Digraph& d, const ArcSubset& b1,
                                  const ArcSubset& b2,
                                  const CapacityVector& b) {
  detail::require(is_b_branching(d, b, b1), "b1 is not a b-branching");
  detail::require(is_b_branching(d, b, b2), "b2 is not a b-branching");
  {
    std::vector<char> in2(d.arc_count(), 0);
    for (int a : b2) in2[a] = 1;
    for (int a : b1)
      detail::require(!in2[a],
                      "b1 and b2 share arc index " + std::to_string(a));
  }

  const int n = d.vertex_count();
  IndegreeVector d1 = indegree_vector(d, b1);
  IndegreeVector d2 = indegree_vector(d, b2);
  IndegreeVector sum(n);
  for (int v = 0; v < n; ++v) sum[v] = d1[v] + d2[v];

  std::vector<Arc> union_arcs;
  for (int a : b1) union_arcs.push_back(d.arcs()[a]);
  for (int a : b2) union_arcs.push_back(d.arcs()[a]);
  Digraph sub(n, std::move(union_arcs));
  const std::vector<VertexSet> comps = source_components(sub);

  TargetPair t;
  t.b1.assign(n, 0);
  t.b2.assign(n, 0);
  std::vector<char> in_comp(n, 0);

  int global_diff = 0;  // t.b1(V) - t.b2(V) so far
  int odd_comps_seen = 0;
  for (const VertexSet& comp : comps) {
    int comp_sum = 0;
    std::vector<int> odd_vertices;
    for (int v : comp) {
      in_comp[v] = 1;
      comp_sum += sum[v];
      if (sum[v] % 2 == 0)
        t.b1[v] = t.b2[v] = sum[v] / 2;
      else
        odd_vertices.push_back(v);
    }
    // Alternate the odd-vertex surplus within the component; for a
    // component with odd total, the leading side alternates globally so
    // the surplus stays balanced across odd components.
    int lead = (comp_sum % 2 == 0) ? 0 : (odd_comps_seen++ % 2);
    for (std::size_t i = 0; i < odd_vertices.size(); ++i) {
      int v = odd_vertices[i];
      int side = (static_cast<int>(i) % 2 == 0) ? lead : 1 - lead;
      t.b1[v] = sum[v] / 2 + (side == 0 ? 1 : 0);
      t.b2[v] = sum[v] / 2 + (side == 1 ? 1 : 0);
      global_diff += (side == 0) ? 1 : -1;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (in_comp[v] || sum[v] % 2 == 0) {
      if (!in_comp[v]) t.b1[v] = t.b2[v] = sum[v] / 2;
      continue;
    }
    int side = (global_diff <= 0) ? 0 : 1;
    t.b1[v] = sum[v] / 2 + (side == 0 ? 1 : 0);
    t.b2[v] = sum[v] / 2 + (side == 1 ? 1 : 0);
    global_diff += (side == 0) ? 1 : -1;
  }

  // The construction satisfies the repartition feasibility condition.
  long long tot1 = 0, tot2 = 0;
  for (int v = 0; v < n; ++v) {
    detail::internal_check(t.b1[v] + t.b2[v] == sum[v],
                           "targets do not sum to the union indegrees");
    detail::internal_check(t.b1[v] <= b[v] && t.b2[v] <= b[v],
                           "target exceeds capacity");
    detail::internal_check(std::abs(t.b1[v] - t.b2[v]) <= 1,
                           "per-vertex targets differ by more than one");
    tot1 += t.b1[v];
    tot2 += t.b2[v];
  }
  detail::internal_check(std::abs(tot1 - tot2) <= 1,
                         "global targets differ by more than one");
  for (const VertexSet& comp : comps) {
    int c1 = sum_over(t.b1, comp), c2 = sum_over(t.b2, comp);
    int cs = c1 + c2;
    detail::internal_check(cs % 2 == 0 ? c1 == c2 : std::abs(c1 - c2) == 1,
                           "component target sums violate the parity rule");
    int cap = sum_over(b, comp);
    detail::internal_check(c1 <= cap - 1 && c2 <= cap - 1,
                           "component target reaches b(X)");
  }
  return t;
}

std::optional<std::pair<ArcSubset, ArcSubset>> repartition_two_bbranchings(
    const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
    const CapacityVector& b, const TargetPair& targets, const BbConfig& cfg) {
  detail::require(is_b_branching(d, b, b1), "b1 is not a b-branching");
  detail::require(is_b_branching(d, b, b2), "b2 is not a b-branching");
  const int n = d.vertex_count();
  detail::require(static_cast<int>(targets.b1.size()) == n &&
                      static_cast<int>(targets.b2.size()) == n,
                  "targets: expected " + std::to_string(n) + " entries");

  std::vector<int> host_index;
  std::vector<Arc> union_arcs;
  std::vector<std::uint8_t> side;
  {
    std::vector<char> in2(d.arc_count(), 0);
    for (int a : b2) in2[a] = 1;
    for (int a : b1)
      detail::require(!in2[a],
                      "b1 and b2 share arc index " + std::to_string(a));
  }
  for (int a : b1) {
    host_index.push_back(a);
    union_arcs.push_back(d.arcs()[a]);
    side.push_back(0);
  }
  for (int a : b2) {
    host_index.push_back(a);
    union_arcs.push_back(d.arcs()[a]);
    side.push_back(1);
  }
  Digraph sub(n, std::move(union_arcs));

  IndegreeVector union_deg(n, 0);
  for (const Arc& a : sub.arcs()) ++union_deg[a.head];
  for (int v = 0; v < n; ++v) {
    detail::require(targets.b1[v] >= 0 && targets.b2[v] >= 0,
                    "targets: negative entry at vertex " + std::to_string(v));
    detail::require(targets.b1[v] <= b[v] && targets.b2[v] <= b[v],
                    "targets: entry exceeds b at vertex " + std::to_string(v));
    detail::require(targets.b1[v] + targets.b2[v] == union_deg[v],
                    "targets: sum at vertex " + std::to_string(v) +
                        " differs from the union indegree");
  }

  // Lemma condition: both component target sums must stay below b(X) on
  // every source component of the union.
  for (const VertexSet& comp : source_components(sub)) {
    int cap = sum_over(b, comp);
    if (sum_over(targets.b1, comp) >= cap ||
        sum_over(targets.b2, comp) >= cap)
      return std::nullopt;
  }

  SplitContext ctx{&sub, &b, &targets.b1};
  bool stuck = false;
  while (split_deviation(ctx, side) > 0 && !stuck) {
    auto improved =
        find_improving_split(ctx, side, cfg.exchange_node_limit, false);
    if (!improved)
      improved =
          find_improving_split(ctx, side, cfg.exchange_node_limit, true);
    if (improved)
      side = std::move(*improved);
    else
      stuck = true;
  }
  if (stuck) {
    if (sub.arc_count() > cfg.fallback_threshold)
      throw SizeLimitError(
          "repartition: exchange search stalled and the union has " +
          std::to_string(sub.arc_count()) + " arcs, above the fallback "
          "threshold " + std::to_string(cfg.fallback_threshold));
    auto found = ExhaustiveSplit(ctx).run();
    detail::internal_check(found.has_value(),
                           "no split meets feasible indegree targets");
    side = std::move(*found);
  }

  std::pair<ArcSubset, ArcSubset> out;
  for (int a = 0; a < sub.arc_count(); ++a)
    (side[a] == 0 ? out.first : out.second).push_back(host_index[a]);
  std::sort(out.first.begin(), out.first.end());
  std::sort(out.second.begin(), out.second.end());

  detail::internal_check(indegree_vector(d, out.first) == targets.b1 &&
                             indegree_vector(d, out.second) == targets.b2,
                         "repartition missed the indegree targets");
  detail::internal_check(is_b_branching(d, b, out.first) &&
                             is_b_branching(d, b, out.second),
                         "repartition produced an invalid b-branching");
  return out;
}

long long b_potential(const Digraph& d, const CapacityVector& b,
                      const std::vector<ArcSubset>& parts, int k) {
  detail::require(k >= 1 && k == static_cast<int>(parts.size()),
                  "k must match the number of parts");
  const long long total = d.arc_count();
  IndegreeVector full(d.vertex_count(), 0);
  for (const Arc& a : d.arcs()) ++full[a.head];

  long long pot = 0;
  for (const ArcSubset& part : parts) {
    detail::require(is_b_branching(d, b, part),
                    "potential: part is not a b-branching");
    pot += dist_to_floor_ceil(part.size(), total, k);
    IndegreeVector deg = indegree_vector(d, part);
    for (int v = 0; v < d.vertex_count(); ++v)
      pot += dist_to_floor_ceil(deg[v], full[v], k);
  }
  return pot;
}

std::vector<ArcSubset> equitable_b_partition(const Digraph& d,
                                             const CapacityVector& b, int k,
                                             std::vector<ArcSubset> initial,
                                             const BbConfig& cfg,
                                             LoopStats* stats) {
  detail::require(k >= 1 && k == static_cast<int>(initial.size()),
                  "k must match the number of initial parts");
  std::vector<char> seen(d.arc_count(), 0);
  for (const ArcSubset& part : initial) {
    detail::require(is_b_branching(d, b, part),
                    "initial: part is not a b-branching");
    for (int a : part) {
      detail::require(!seen[a], "initial: arc index " + std::to_string(a) +
                                    " appears in two parts");
      seen[a] = 1;
    }
  }
  for (int a = 0; a < d.arc_count(); ++a)
    detail::require(seen[a], "initial: arc index " + std::to_string(a) +
                                 " missing from all parts");

  const long long total = d.arc_count();
  IndegreeVector full(d.vertex_count(), 0);
  for (const Arc& a : d.arcs()) ++full[a.head];

  auto part_term = [&](const ArcSubset& part) {
    long long t = dist_to_floor_ceil(part.size(), total, k);
    IndegreeVector deg = indegree_vector(d, part);
    for (int v = 0; v < d.vertex_count(); ++v)
      t += dist_to_floor_ceil(deg[v], full[v], k);
    return t;
  };

  if (stats) {
    stats->initial_potential = b_potential(d, b, initial, k);
    stats->iterations = 0;
  }

  while (true) {
    std::vector<IndegreeVector> degs;
    degs.reserve(k);
    for (const ArcSubset& part : initial)
      degs.push_back(indegree_vector(d, part));

    int best_i = -1, best_j = -1;
    long long best_score = -1;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        long long si = initial[i].size(), sj = initial[j].size();
        bool violating =
            std::abs(si - sj) >= 2 && std::min(si, sj) * k < total &&
            total < std::max(si, sj) * k;
        for (int v = 0; v < d.vertex_count() && !violating; ++v) {
          long long di = degs[i][v], dj = degs[j][v];
          violating = std::abs(di - dj) >= 2 &&
                      std::min(di, dj) * k < full[v] &&
                      full[v] < std::max(di, dj) * k;
        }
        if (!violating) continue;
        long long score = part_term(initial[i]) + part_term(initial[j]);
        if (score > best_score) {
          best_score = score;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0) break;

    const long long before = b_potential(d, b, initial, k);
    TargetPair targets =
        build_indegree_targets(d, initial[best_i], initial[best_j], b);
    auto repart = repartition_two_bbranchings(d, initial[best_i],
                                              initial[best_j], b, targets,
                                              cfg);
    detail::internal_check(repart.has_value(),
                           "constructed targets were infeasible");
    initial[best_i] = std::move(repart->first);
    initial[best_j] = std::move(repart->second);

    detail::internal_check(b_potential(d, b, initial, k) < before,
                           "rebalance did not decrease the potential");
    if (stats) ++stats->iterations;
  }

  if (stats) stats->final_potential = b_potential(d, b, initial, k);
  return initial;
}

}  // namespace equipart
