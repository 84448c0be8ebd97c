// Python bindings for the core operations.  Vertex sets cross the boundary
// as sorted lists of ints, partitions as lists of parts.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "equipart/b_branching.hpp"
#include "equipart/branchings.hpp"
#include "equipart/idp.hpp"
#include "equipart/matching_forest.hpp"
#include "equipart/oracle.hpp"

namespace py = pybind11;
using namespace equipart;

namespace {

MixedGraph make_mixed(int n, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<std::pair<int, int>>& arcs) {
  std::vector<Edge> es;
  std::vector<Arc> as;
  for (auto [u, v] : edges) es.push_back({u, v});
  for (auto [t, h] : arcs) as.push_back({t, h});
  return MixedGraph(n, std::move(es), std::move(as));
}

Digraph make_digraph(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<Arc> as;
  for (auto [t, h] : arcs) as.push_back({t, h});
  return Digraph(n, std::move(as));
}

std::vector<std::vector<int>> sets_to_lists(const std::vector<VertexSet>& in) {
  std::vector<std::vector<int>> out;
  out.reserve(in.size());
  for (const VertexSet& s : in) out.push_back(s.elements());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "equitable partitions into branchings, matching forests and "
            "b-branchings";

  py::register_exception<SizeLimitError>(m, "SizeLimitError");

  py::class_<Digraph>(m, "Digraph")
      .def(py::init(&make_digraph), py::arg("n"), py::arg("arcs"))
      .def_property_readonly("n", &Digraph::vertex_count)
      .def_property_readonly("arcs",
                             [](const Digraph& d) {
                               std::vector<std::pair<int, int>> out;
                               for (const Arc& a : d.arcs())
                                 out.emplace_back(a.tail, a.head);
                               return out;
                             })
      .def("__repr__", [](const Digraph& d) {
        return "Digraph(n=" + std::to_string(d.vertex_count()) + ", arcs=" +
               std::to_string(d.arc_count()) + ")";
      });

  py::class_<MixedGraph>(m, "MixedGraph")
      .def(py::init(&make_mixed), py::arg("n"), py::arg("edges"),
           py::arg("arcs"))
      .def_property_readonly("n", &MixedGraph::vertex_count)
      .def_property_readonly("edges",
                             [](const MixedGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const Edge& e : g.edges())
                                 out.emplace_back(e.u, e.v);
                               return out;
                             })
      .def_property_readonly("arcs",
                             [](const MixedGraph& g) {
                               std::vector<std::pair<int, int>> out;
                               for (const Arc& a : g.arcs())
                                 out.emplace_back(a.tail, a.head);
                               return out;
                             })
      .def("arc_digraph", &MixedGraph::arc_digraph)
      .def("__repr__", [](const MixedGraph& g) {
        return "MixedGraph(n=" + std::to_string(g.vertex_count()) +
               ", edges=" + std::to_string(g.edge_count()) + ", arcs=" +
               std::to_string(g.arc_count()) + ")";
      });

  py::class_<MatchingForest>(m, "MatchingForest")
      .def(py::init([](EdgeSubset edges, ArcSubset arcs) {
             return MatchingForest{std::move(edges), std::move(arcs)};
           }),
           py::arg("edges") = EdgeSubset{}, py::arg("arcs") = ArcSubset{})
      .def_readwrite("edges", &MatchingForest::edges)
      .def_readwrite("arcs", &MatchingForest::arcs)
      .def(py::self == py::self)
      .def("__repr__", [](const MatchingForest& f) {
        return "MatchingForest(edges=" + std::to_string(f.edges.size()) +
               ", arcs=" + std::to_string(f.arcs.size()) + ")";
      });

  // graph core
  m.def("strong_components",
        [](const Digraph& d) { return sets_to_lists(strong_components(d)); });
  m.def("source_components",
        [](const Digraph& d) { return sets_to_lists(source_components(d)); });
  m.def("indegree_vector", &indegree_vector, py::arg("digraph"),
        py::arg("arcs"));

  // branchings
  m.def("is_branching", &is_branching, py::arg("digraph"), py::arg("arcs"));
  m.def("branching_roots",
        [](const Digraph& d, const ArcSubset& b) {
          return branching_roots(d, b).elements();
        },
        py::arg("digraph"), py::arg("arcs"));
  m.def("disjoint_branchings_with_roots",
        [](const Digraph& d, const std::vector<std::vector<int>>& roots) {
          std::vector<VertexSet> rs;
          for (const auto& r : roots) rs.emplace_back(r);
          return disjoint_branchings_with_roots(d, rs);
        },
        py::arg("digraph"), py::arg("roots"));
  m.def("repartition_two_branchings",
        [](const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
           const std::vector<int>& r1, const std::vector<int>& r2) {
          return repartition_two_branchings(
              d, b1, b2, {VertexSet(r1), VertexSet(r2)});
        },
        py::arg("digraph"), py::arg("b1"), py::arg("b2"), py::arg("r1"),
        py::arg("r2"));
  m.def("equitable_branching_partition",
        [](const Digraph& d, std::vector<ArcSubset> initial) {
          return equitable_branching_partition(d, std::move(initial));
        },
        py::arg("digraph"), py::arg("initial"));

  // matching forests
  m.def("is_matching_forest", &is_matching_forest, py::arg("graph"),
        py::arg("forest"));
  m.def("boundary",
        [](const MixedGraph& g, const MatchingForest& f) {
          return boundary(g, f).elements();
        },
        py::arg("graph"), py::arg("forest"));
  m.def("mf_potential", &mf_potential, py::arg("graph"), py::arg("parts"));
  m.def("equitable_mf_partition",
        [](const MixedGraph& g, std::vector<MatchingForest> initial) {
          return equitable_mf_partition(g, std::move(initial));
        },
        py::arg("graph"), py::arg("initial"));

  // b-branchings
  m.def("tight_core",
        [](const Digraph& d, const CapacityVector& b, const ArcSubset& s) {
          return tight_core(d, b, s).elements();
        },
        py::arg("digraph"), py::arg("b"), py::arg("arcs"));
  m.def("is_b_branching", &is_b_branching, py::arg("digraph"), py::arg("b"),
        py::arg("arcs"));
  m.def("build_indegree_targets",
        [](const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
           const CapacityVector& b) {
          TargetPair t = build_indegree_targets(d, b1, b2, b);
          return std::make_pair(t.b1, t.b2);
        },
        py::arg("digraph"), py::arg("b1"), py::arg("b2"), py::arg("b"));
  m.def("repartition_two_bbranchings",
        [](const Digraph& d, const ArcSubset& b1, const ArcSubset& b2,
           const CapacityVector& b, const IndegreeVector& t1,
           const IndegreeVector& t2) {
          return repartition_two_bbranchings(d, b1, b2, b, {t1, t2});
        },
        py::arg("digraph"), py::arg("b1"), py::arg("b2"), py::arg("b"),
        py::arg("target1"), py::arg("target2"));
  m.def("b_potential", &b_potential, py::arg("digraph"), py::arg("b"),
        py::arg("parts"), py::arg("k"));
  m.def("equitable_b_partition",
        [](const Digraph& d, const CapacityVector& b, int k,
           std::vector<ArcSubset> initial) {
          return equitable_b_partition(d, b, k, std::move(initial));
        },
        py::arg("digraph"), py::arg("b"), py::arg("k"), py::arg("initial"));

  // integer decomposition
  m.def("partition_into_k_bbranchings",
        [](const Digraph& d, const CapacityVector& b, int k) {
          return partition_into_k_bbranchings(d, b, k);
        },
        py::arg("digraph"), py::arg("b"), py::arg("k"));
  m.def("decompose",
        [](const Digraph& d, const CapacityVector& b, const ArcVector& x,
           int kappa, std::optional<int> ell, const std::vector<int>& vprime,
           const std::vector<int>& bprime) {
          IdpQuery q;
          q.kappa = kappa;
          q.ell = ell;
          q.vprime = vprime;
          q.bprime = bprime;
          return decompose(d, b, x, q);
        },
        py::arg("digraph"), py::arg("b"), py::arg("x"), py::arg("kappa"),
        py::arg("ell") = std::nullopt,
        py::arg("vprime") = std::vector<int>{},
        py::arg("bprime") = std::vector<int>{});

  // oracles
  py::enum_<StructureKind>(m, "StructureKind")
      .value("branching", StructureKind::branching)
      .value("matching_forest", StructureKind::matching_forest)
      .value("b_branching", StructureKind::b_branching);
  py::enum_<GapCriterion>(m, "GapCriterion")
      .value("boundary", GapCriterion::boundary)
      .value("size", GapCriterion::size)
      .value("indegree", GapCriterion::indegree);

  py::class_<GeneratedInstance>(m, "GeneratedInstance")
      .def_readonly("graph", &GeneratedInstance::graph)
      .def_readonly("b", &GeneratedInstance::b)
      .def_readonly("partition", &GeneratedInstance::partition);

  m.def("enumerate_matching_forests",
        [](const MixedGraph& g) { return enumerate_matching_forests(g); },
        py::arg("graph"));
  m.def("enumerate_b_branchings",
        [](const Digraph& d, const CapacityVector& b) {
          return enumerate_b_branchings(d, b);
        },
        py::arg("digraph"), py::arg("b"));
  m.def("check_delta_matroid",
        [](const MixedGraph& g) { return check_delta_matroid(g); },
        py::arg("graph"));
  m.def("generate_partitionable",
        [](std::uint64_t seed, int n, int k, double edge_density,
           double arc_density, int b_max, StructureKind kind) {
          GeneratorConfig config{seed, n, k, edge_density, arc_density,
                                 b_max};
          return generate_partitionable(config, kind);
        },
        py::arg("seed"), py::arg("n"), py::arg("k"),
        py::arg("edge_density") = 0.5, py::arg("arc_density") = 0.5,
        py::arg("b_max") = 1, py::arg("kind") = StructureKind::branching);
  m.def("brute_force_min_gap",
        [](const MixedGraph& g, const CapacityVector& b, int k,
           GapCriterion criterion) {
          return brute_force_min_gap(g, b, k, criterion);
        },
        py::arg("graph"), py::arg("b"), py::arg("k"), py::arg("criterion"));
  m.def("partition_into_k_matching_forests",
        [](const MixedGraph& g, int k) {
          return partition_into_k_matching_forests(g, k);
        },
        py::arg("graph"), py::arg("k"));
}
