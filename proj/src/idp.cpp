#include "equipart/idp.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace equipart {

namespace {

// Assigns arcs to parts in head order with monotone validity pruning: a
// part that violates an indegree cap or acquires a tight core can never be
// repaired by adding more arcs.  Part symmetry is broken by allowing each
// arc only into parts that are already in use plus one fresh part.
class PartitionSearch {
 public:
  PartitionSearch(const Digraph& d, const CapacityVector& b, int k,
                  long long node_budget)
      : d_(d), b_(b), k_(k), budget_(node_budget) {
    order_.resize(d.arc_count());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int c) {
      return d.arcs()[a].head < d.arcs()[c].head;
    });
    assignment_.assign(d.arc_count(), -1);
    parts_.assign(k, {});
  }

  // found -> partition; refuted -> nullopt; budget exhausted -> flag set
  std::optional<std::vector<ArcSubset>> run() {
    if (solve(0)) {
      std::vector<ArcSubset> out(k_);
      for (int a = 0; a < d_.arc_count(); ++a)
        out[assignment_[a]].push_back(a);
      return out;
    }
    return std::nullopt;
  }

  bool out_of_budget() const { return out_of_budget_; }

 private:
  bool solve(std::size_t pos) {
    if (out_of_budget_) return false;
    if (--budget_ < 0) {
      out_of_budget_ = true;
      return false;
    }
    if (pos == order_.size()) return true;
    const int a = order_[pos];
    const int used = used_parts_;
    for (int p = 0; p <= used && p < k_; ++p) {
      parts_[p].push_back(a);
      assignment_[a] = p;
      if (p == used) ++used_parts_;
      bool ok = indegree_ok(p, d_.arcs()[a].head) &&
                tight_core(d_, b_, parts_[p]).empty();
      if (ok && solve(pos + 1)) return true;
      parts_[p].pop_back();
      assignment_[a] = -1;
      if (p == used) --used_parts_;
      if (out_of_budget_) return false;
    }
    return false;
  }

  bool indegree_ok(int p, int head) const {
    int deg = 0;
    for (int a : parts_[p])
      if (d_.arcs()[a].head == head) ++deg;
    return deg <= b_[head];
  }

  const Digraph& d_;
  const CapacityVector& b_;
  const int k_;
  long long budget_;
  bool out_of_budget_ = false;
  std::vector<int> order_;
  std::vector<int> assignment_;
  std::vector<ArcSubset> parts_;
  int used_parts_ = 0;
};

}  // namespace

ExpandedDigraph expand_multigraph(const Digraph& d, const ArcVector& x) {
  detail::require(static_cast<int>(x.size()) == d.arc_count(),
                  "x: expected " + std::to_string(d.arc_count()) +
                      " entries, got " + std::to_string(x.size()));
  ExpandedDigraph out;
  std::vector<Arc> arcs;
  for (int a = 0; a < d.arc_count(); ++a) {
    detail::require(x[a] >= 0, "x[" + std::to_string(a) +
                                   "]: entry must be nonnegative");
    for (int c = 0; c < x[a]; ++c) {
      arcs.push_back(d.arcs()[a]);
      out.origin.push_back(a);
    }
  }
  out.graph = Digraph(d.vertex_count(), std::move(arcs));
  return out;
}

std::optional<std::vector<ArcSubset>> partition_into_k_bbranchings(
    const Digraph& d, const CapacityVector& b, int k, const IdpConfig& cfg) {
  detail::require(k >= 1, "k must be positive");
  detail::require(static_cast<int>(b.size()) == d.vertex_count(),
                  "b: expected " + std::to_string(d.vertex_count()) +
                      " entries, got " + std::to_string(b.size()));
  const bool complete = d.arc_count() <= cfg.complete_bound;
  PartitionSearch search(d, b, k,
                         complete ? std::numeric_limits<long long>::max()
                                  : cfg.node_budget);
  auto result = search.run();
  if (result) {
    for (ArcSubset& part : *result) std::sort(part.begin(), part.end());
    return result;
  }
  if (search.out_of_budget())
    throw SizeLimitError("partition search over " +
                         std::to_string(d.arc_count()) +
                         " arcs exceeded its node budget (complete bound is " +
                         std::to_string(cfg.complete_bound) + " arcs)");
  return std::nullopt;
}

std::optional<std::vector<ArcVector>> decompose(const Digraph& d,
                                                const CapacityVector& b,
                                                const ArcVector& x,
                                                const IdpQuery& q,
                                                const IdpConfig& cfg) {
  detail::require(q.kappa >= 1, "kappa must be positive");
  detail::require(static_cast<int>(b.size()) == d.vertex_count(),
                  "b: expected " + std::to_string(d.vertex_count()) +
                      " entries, got " + std::to_string(b.size()));
  detail::require(static_cast<int>(x.size()) == d.arc_count(),
                  "x: expected " + std::to_string(d.arc_count()) +
                      " entries, got " + std::to_string(x.size()));
  long long total = 0;
  for (int a = 0; a < d.arc_count(); ++a) {
    detail::require(x[a] >= 0, "x[" + std::to_string(a) +
                                   "]: entry must be nonnegative");
    total += x[a];
  }
  if (q.ell) {
    detail::require(*q.ell >= 0, "ell must be nonnegative");
    detail::require(total == static_cast<long long>(q.kappa) * *q.ell,
                    "x: total " + std::to_string(total) +
                        " is not kappa * ell = " +
                        std::to_string(static_cast<long long>(q.kappa) *
                                       *q.ell));
  }
  detail::require(q.vprime.size() == q.bprime.size(),
                  "Vprime and bprime must have the same length");
  std::vector<long long> head_total(d.vertex_count(), 0);
  for (int a = 0; a < d.arc_count(); ++a)
    head_total[d.arcs()[a].head] += x[a];
  for (std::size_t i = 0; i < q.vprime.size(); ++i) {
    const int v = q.vprime[i];
    detail::require(v >= 0 && v < d.vertex_count(),
                    "Vprime[" + std::to_string(i) + "]: vertex " +
                        std::to_string(v) + " out of range");
    detail::require(q.bprime[i] >= 0 && q.bprime[i] <= b[v],
                    "bprime[" + std::to_string(i) +
                        "]: must lie in [0, b(v)]");
    detail::require(head_total[v] ==
                        static_cast<long long>(q.kappa) * q.bprime[i],
                    "x: indegree total " + std::to_string(head_total[v]) +
                        " at vertex " + std::to_string(v) +
                        " is not kappa * bprime = " +
                        std::to_string(static_cast<long long>(q.kappa) *
                                       q.bprime[i]));
  }

  ExpandedDigraph expanded = expand_multigraph(d, x);
  auto parts = partition_into_k_bbranchings(expanded.graph, b, q.kappa, cfg);
  if (!parts) return std::nullopt;

  parts = equitable_b_partition(expanded.graph, b, q.kappa,
                                std::move(*parts), cfg.bb);

  std::vector<ArcVector> result(q.kappa, ArcVector(d.arc_count(), 0));
  ArcVector check_sum(d.arc_count(), 0);
  for (int p = 0; p < q.kappa; ++p) {
    for (int a : (*parts)[p]) {
      ++result[p][expanded.origin[a]];
      ++check_sum[expanded.origin[a]];
    }
    if (q.ell)
      detail::internal_check(static_cast<int>((*parts)[p].size()) == *q.ell,
                             "decomposed part misses the size condition");
    IndegreeVector deg = indegree_vector(expanded.graph, (*parts)[p]);
    for (std::size_t i = 0; i < q.vprime.size(); ++i)
      detail::internal_check(deg[q.vprime[i]] == q.bprime[i],
                             "decomposed part misses the indegree condition");
  }
  detail::internal_check(check_sum == x,
                         "decomposed parts do not sum to x");
  return result;
}

}  // namespace equipart
