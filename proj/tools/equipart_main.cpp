// Command-line front end: generate, check, partition, decompose and verify
// instance files in the JSON format described in the README.
//
// Exit codes: 0 success, 1 bad input, 2 proven infeasible, 3 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "equipart/b_branching.hpp"
#include "equipart/branchings.hpp"
#include "equipart/idp.hpp"
#include "equipart/json_io.hpp"
#include "equipart/matching_forest.hpp"
#include "equipart/oracle.hpp"

namespace {

using equipart::ArcSubset;
using equipart::Instance;
using equipart::MatchingForest;
using json = nlohmann::ordered_json;

struct Limits {
  int fallback_threshold = equipart::BbConfig{}.fallback_threshold;
  int size_limit = equipart::IdpConfig{}.complete_bound;
  int exhaustive_vertex_limit =
      equipart::BranchingConfig{}.exhaustive_vertex_limit;
};

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << "fnv1a:" << std::hex << h;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw equipart::ParseError("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

long long max_pairwise_gap(const std::vector<long long>& values) {
  long long gap = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      gap = std::max(gap, std::abs(values[i] - values[j]));
  return gap;
}

long long max_indegree_gap(const equipart::Digraph& d,
                           const std::vector<ArcSubset>& parts) {
  long long gap = 0;
  std::vector<equipart::IndegreeVector> degs;
  for (const ArcSubset& part : parts)
    degs.push_back(equipart::indegree_vector(d, part));
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      for (int v = 0; v < d.vertex_count(); ++v)
        gap = std::max(gap, static_cast<long long>(
                                std::abs(degs[i][v] - degs[j][v])));
  return gap;
}

int resolve_k(const Instance& inst, int flag_k, std::size_t parts) {
  if (flag_k > 0) return flag_k;
  if (inst.k) return *inst.k;
  if (parts > 0) return static_cast<int>(parts);
  throw equipart::ParseError("k: missing (pass --k or put \"k\" in the file)");
}

void emit(const json& report, const std::optional<std::string>& output_path,
          const Instance& result) {
  json r = report;
  if (output_path)
    equipart::save_instance(result, *output_path);
  else
    r["output"] = equipart::instance_to_json(result);
  std::cout << r.dump(2) << std::endl;
}

// ---------------------------------------------------------------------------

int run_gen(const std::string& kind_name, const equipart::GeneratorConfig& cfg,
            const std::string& output_path) {
  Stopwatch watch;
  equipart::StructureKind kind;
  if (kind_name == "branching")
    kind = equipart::StructureKind::branching;
  else if (kind_name == "matching-forest")
    kind = equipart::StructureKind::matching_forest;
  else if (kind_name == "b-branching")
    kind = equipart::StructureKind::b_branching;
  else
    throw equipart::ParseError("kind: expected branching, matching-forest or "
                               "b-branching, got \"" + kind_name + "\"");

  auto gen = equipart::generate_partitionable(cfg, kind);
  Instance inst;
  inst.graph = gen.graph;
  if (kind == equipart::StructureKind::b_branching) inst.b = gen.b;
  inst.k = cfg.k;
  inst.partition = equipart::forests_to_partition(gen.partition);
  equipart::save_instance(inst, output_path);

  json report;
  report["subcommand"] = "gen";
  report["input_digest"] = fnv1a_digest(equipart::instance_to_json(inst).dump());
  report["kind"] = kind_name;
  report["seed"] = cfg.seed;
  report["elements"] = inst.graph.element_count();
  report["wall_time_ms"] = watch.ms();
  std::cout << report.dump(2) << std::endl;
  return 0;
}

// Validates the file's partition against the kind implied by its contents:
// matching forests when edges are present, otherwise b-branchings under b
// (all ones when absent).
json check_instance(const Instance& inst, bool require_partition) {
  json summary;
  summary["n"] = inst.graph.vertex_count();
  summary["edges"] = inst.graph.edge_count();
  summary["arcs"] = inst.graph.arc_count();
  if (!inst.partition) {
    if (require_partition)
      throw equipart::ParseError("partition: missing field");
    summary["partition"] = nullptr;
    return summary;
  }

  const auto forests =
      equipart::partition_to_forests(inst.graph, *inst.partition, true);
  std::vector<long long> boundaries, sizes;
  const equipart::Digraph d = inst.graph.arc_digraph();
  const equipart::CapacityVector b =
      inst.b ? *inst.b
             : equipart::CapacityVector(inst.graph.vertex_count(), 1);

  if (inst.graph.edge_count() > 0) {
    summary["checked_as"] = "matching-forests";
    for (std::size_t p = 0; p < forests.size(); ++p) {
      if (!equipart::is_matching_forest(inst.graph, forests[p]))
        throw std::invalid_argument("partition[" + std::to_string(p) +
                                    "]: not a matching forest");
      boundaries.push_back(
          equipart::boundary(inst.graph, forests[p]).size());
    }
    summary["max_gap"]["boundary"] = max_pairwise_gap(boundaries);
  } else {
    summary["checked_as"] = inst.b ? "b-branchings" : "branchings";
    std::vector<ArcSubset> parts;
    for (std::size_t p = 0; p < forests.size(); ++p) {
      if (!equipart::is_b_branching(d, b, forests[p].arcs))
        throw std::invalid_argument(
            "partition[" + std::to_string(p) + "]: not a " +
            (inst.b ? std::string("b-branching") : std::string("branching")));
      parts.push_back(forests[p].arcs);
      sizes.push_back(forests[p].arcs.size());
    }
    summary["max_gap"]["size"] = max_pairwise_gap(sizes);
    summary["max_gap"]["indegree"] = max_indegree_gap(d, parts);
  }
  summary["parts"] = inst.partition->size();
  return summary;
}

int run_check(const std::string& input_path, bool require_partition,
              const char* name) {
  Stopwatch watch;
  const std::string bytes = read_file(input_path);
  Instance inst = equipart::instance_from_json(json::parse(bytes, nullptr,
                                                           true));
  json report = check_instance(inst, require_partition);
  report["subcommand"] = name;
  report["input_digest"] = fnv1a_digest(bytes);
  report["ok"] = true;
  report["wall_time_ms"] = watch.ms();
  std::cout << report.dump(2) << std::endl;
  return 0;
}

int run_partition_branchings(const std::string& input_path,
                             const std::optional<std::string>& output_path,
                             int flag_k, bool verify, const Limits& limits) {
  Stopwatch watch;
  const std::string bytes = read_file(input_path);
  Instance inst = equipart::load_instance(input_path);
  if (inst.graph.edge_count() > 0)
    throw equipart::ParseError(
        "edges: partition-branchings requires an arc-only instance");
  const equipart::Digraph d = inst.graph.arc_digraph();
  const int k = resolve_k(inst, flag_k,
                          inst.partition ? inst.partition->size() : 0);

  std::vector<ArcSubset> initial;
  if (inst.partition) {
    initial =
        equipart::partition_to_arc_subsets(inst.graph, *inst.partition, true);
    if (static_cast<int>(initial.size()) != k)
      throw equipart::ParseError(
          "k: " + std::to_string(k) + " does not match the " +
          std::to_string(initial.size()) + " parts in the file");
  } else {
    equipart::IdpConfig icfg;
    icfg.complete_bound = limits.size_limit;
    auto found = equipart::partition_into_k_bbranchings(
        d, equipart::CapacityVector(d.vertex_count(), 1), k, icfg);
    if (!found) {
      std::cerr << "infeasible: no partition into " << k
                << " branchings exists" << std::endl;
      return 2;
    }
    initial = std::move(*found);
  }

  equipart::BranchingConfig cfg;
  cfg.exhaustive_vertex_limit = limits.exhaustive_vertex_limit;
  equipart::LoopStats stats;
  auto parts = equitable_branching_partition(d, initial, cfg, &stats);

  std::vector<long long> sizes;
  for (const ArcSubset& part : parts) sizes.push_back(part.size());
  const long long gap = max_pairwise_gap(sizes);
  if (verify) {
    for (const ArcSubset& part : parts) {
      equipart::detail::internal_check(equipart::is_branching(d, part),
                                       "output part is not a branching");
      long long sz = static_cast<long long>(part.size());
      equipart::detail::internal_check(
          sz == d.arc_count() / k || sz == (d.arc_count() + k - 1) / k,
          "output size misses the floor/ceil bound");
    }
  }

  Instance out = inst;
  out.k = k;
  out.partition = equipart::arc_subsets_to_partition(parts);

  json report;
  report["subcommand"] = "partition-branchings";
  report["input_digest"] = fnv1a_digest(bytes);
  report["k"] = k;
  report["iterations"] = stats.iterations;
  report["initial_potential"] = stats.initial_potential;
  report["final_potential"] = stats.final_potential;
  report["max_gap"]["size"] = gap;
  report["verified"] = verify;
  report["wall_time_ms"] = watch.ms();
  emit(report, output_path, out);
  return 0;
}

int run_partition_mf(const std::string& input_path,
                     const std::optional<std::string>& output_path,
                     int flag_k, bool verify, const Limits& limits) {
  Stopwatch watch;
  const std::string bytes = read_file(input_path);
  Instance inst = equipart::load_instance(input_path);
  const int k = resolve_k(inst, flag_k,
                          inst.partition ? inst.partition->size() : 0);

  std::vector<MatchingForest> initial;
  if (inst.partition) {
    initial =
        equipart::partition_to_forests(inst.graph, *inst.partition, true);
    if (static_cast<int>(initial.size()) != k)
      throw equipart::ParseError(
          "k: " + std::to_string(k) + " does not match the " +
          std::to_string(initial.size()) + " parts in the file");
    for (std::size_t p = 0; p < initial.size(); ++p)
      if (!equipart::is_matching_forest(inst.graph, initial[p]))
        throw std::invalid_argument("partition[" + std::to_string(p) +
                                    "]: not a matching forest");
  } else {
    auto found = equipart::partition_into_k_matching_forests(inst.graph, k);
    if (!found) {
      std::cerr << "infeasible: no partition into " << k
                << " matching forests exists" << std::endl;
      return 2;
    }
    initial = std::move(*found);
  }

  equipart::BranchingConfig cfg;
  cfg.exhaustive_vertex_limit = limits.exhaustive_vertex_limit;
  equipart::LoopStats stats;
  auto parts = equitable_mf_partition(inst.graph, initial, cfg, &stats);

  std::vector<long long> boundaries;
  for (const MatchingForest& f : parts)
    boundaries.push_back(equipart::boundary(inst.graph, f).size());
  const long long gap = max_pairwise_gap(boundaries);
  if (verify)
    equipart::detail::internal_check(gap <= 2,
                                     "output boundary gap exceeds 2");

  Instance out = inst;
  out.k = k;
  out.partition = equipart::forests_to_partition(parts);

  json report;
  report["subcommand"] = "partition-mf";
  report["input_digest"] = fnv1a_digest(bytes);
  report["k"] = k;
  report["iterations"] = stats.iterations;
  report["initial_potential"] = stats.initial_potential;
  report["final_potential"] = stats.final_potential;
  report["max_gap"]["boundary"] = gap;
  report["verified"] = verify;
  report["wall_time_ms"] = watch.ms();
  emit(report, output_path, out);
  return 0;
}

int run_partition_bb(const std::string& input_path,
                     const std::optional<std::string>& output_path,
                     int flag_k, bool verify, const Limits& limits) {
  Stopwatch watch;
  const std::string bytes = read_file(input_path);
  Instance inst = equipart::load_instance(input_path);
  if (inst.graph.edge_count() > 0)
    throw equipart::ParseError(
        "edges: partition-bb requires an arc-only instance");
  const equipart::Digraph d = inst.graph.arc_digraph();
  const equipart::CapacityVector b =
      inst.b ? *inst.b : equipart::CapacityVector(d.vertex_count(), 1);
  const int k = resolve_k(inst, flag_k,
                          inst.partition ? inst.partition->size() : 0);

  equipart::BbConfig cfg;
  cfg.fallback_threshold = limits.fallback_threshold;

  std::vector<ArcSubset> initial;
  if (inst.partition) {
    initial =
        equipart::partition_to_arc_subsets(inst.graph, *inst.partition, true);
    if (static_cast<int>(initial.size()) != k)
      throw equipart::ParseError(
          "k: " + std::to_string(k) + " does not match the " +
          std::to_string(initial.size()) + " parts in the file");
  } else {
    equipart::IdpConfig icfg;
    icfg.complete_bound = limits.size_limit;
    icfg.bb = cfg;
    auto found = equipart::partition_into_k_bbranchings(d, b, k, icfg);
    if (!found) {
      std::cerr << "infeasible: no partition into " << k
                << " b-branchings exists" << std::endl;
      return 2;
    }
    initial = std::move(*found);
  }

  equipart::LoopStats stats;
  auto parts = equitable_b_partition(d, b, k, initial, cfg, &stats);

  std::vector<long long> sizes;
  for (const ArcSubset& part : parts) sizes.push_back(part.size());
  const long long size_gap = max_pairwise_gap(sizes);
  const long long indeg_gap = max_indegree_gap(d, parts);
  if (verify) {
    equipart::IndegreeVector full(d.vertex_count(), 0);
    for (const equipart::Arc& a : d.arcs()) ++full[a.head];
    for (const ArcSubset& part : parts) {
      equipart::detail::internal_check(equipart::is_b_branching(d, b, part),
                                       "output part is not a b-branching");
      long long sz = static_cast<long long>(part.size());
      equipart::detail::internal_check(
          sz >= d.arc_count() / k && sz <= (d.arc_count() + k - 1) / k,
          "output size misses the floor/ceil bound");
      equipart::IndegreeVector deg = equipart::indegree_vector(d, part);
      for (int v = 0; v < d.vertex_count(); ++v)
        equipart::detail::internal_check(
            deg[v] >= full[v] / k && deg[v] <= (full[v] + k - 1) / k,
            "output indegree misses the floor/ceil bound");
    }
  }

  Instance out = inst;
  out.b = b;
  out.k = k;
  out.partition = equipart::arc_subsets_to_partition(parts);

  json report;
  report["subcommand"] = "partition-bb";
  report["input_digest"] = fnv1a_digest(bytes);
  report["k"] = k;
  report["iterations"] = stats.iterations;
  report["initial_potential"] = stats.initial_potential;
  report["final_potential"] = stats.final_potential;
  report["max_gap"]["size"] = size_gap;
  report["max_gap"]["indegree"] = indeg_gap;
  report["verified"] = verify;
  report["wall_time_ms"] = watch.ms();
  emit(report, output_path, out);
  return 0;
}

int run_decompose(const std::string& input_path,
                  const std::string& query_path,
                  const std::optional<std::string>& output_path,
                  const Limits& limits) {
  Stopwatch watch;
  const std::string bytes = read_file(input_path);
  Instance inst = equipart::load_instance(input_path);
  if (inst.graph.edge_count() > 0)
    throw equipart::ParseError("edges: decompose requires an arc-only "
                               "instance");
  const equipart::Digraph d = inst.graph.arc_digraph();
  const equipart::CapacityVector b =
      inst.b ? *inst.b : equipart::CapacityVector(d.vertex_count(), 1);

  json qj;
  try {
    qj = json::parse(read_file(query_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw equipart::ParseError(query_path + ": malformed JSON: " + e.what());
  }
  if (!qj.contains("x") || !qj["x"].is_array())
    throw equipart::ParseError("x: missing or not an array");
  equipart::ArcVector x;
  for (const auto& entry : qj["x"]) {
    if (!entry.is_number_integer())
      throw equipart::ParseError("x: entries must be integers");
    x.push_back(entry.get<int>());
  }
  equipart::IdpQuery q;
  if (!qj.contains("kappa") || !qj["kappa"].is_number_integer())
    throw equipart::ParseError("kappa: missing or not an integer");
  q.kappa = qj["kappa"].get<int>();
  if (qj.contains("ell") && !qj["ell"].is_null())
    q.ell = qj["ell"].get<int>();
  if (qj.contains("Vprime"))
    for (const auto& entry : qj["Vprime"]) q.vprime.push_back(entry.get<int>());
  if (qj.contains("bprime"))
    for (const auto& entry : qj["bprime"]) q.bprime.push_back(entry.get<int>());

  equipart::IdpConfig icfg;
  icfg.complete_bound = limits.size_limit;
  icfg.bb.fallback_threshold = limits.fallback_threshold;
  auto parts = equipart::decompose(d, b, x, q, icfg);
  if (!parts) {
    std::cerr << "infeasible: x is not a sum of " << q.kappa
              << " b-branchings meeting the conditions" << std::endl;
    return 2;
  }

  json result;
  result["kappa"] = q.kappa;
  result["parts"] = *parts;

  json report;
  report["subcommand"] = "decompose";
  report["input_digest"] = fnv1a_digest(bytes);
  report["kappa"] = q.kappa;
  report["wall_time_ms"] = watch.ms();
  if (output_path) {
    std::ofstream out(*output_path);
    if (!out)
      throw equipart::ParseError("cannot open output file: " + *output_path);
    out << result.dump(2) << "\n";
  } else {
    report["output"] = result;
  }
  std::cout << report.dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equitable partitions into branchings, matching forests and "
               "b-branchings"};
  app.require_subcommand(1);

  std::string input_path, query_path, output_str, config_path, kind;
  int flag_k = 0;
  bool verify = false;
  Limits limits;
  equipart::GeneratorConfig gen_cfg;

  auto add_common = [&](CLI::App* cmd, bool needs_input) {
    auto* opt = cmd->add_option("--input", input_path, "instance JSON file");
    if (needs_input) opt->required();
    cmd->add_option("--output", output_str, "write the result here");
    cmd->add_option("--config", config_path,
                    "JSON file with default sizes and limits");
    cmd->add_option("--fallback-threshold", limits.fallback_threshold,
                    "max union size for the exhaustive repartition fallback");
    cmd->add_option("--size-limit", limits.size_limit,
                    "max arc count for complete backtracking searches");
  };

  CLI::App* c_check = app.add_subcommand("check", "validate an instance file");
  add_common(c_check, true);

  CLI::App* c_verify =
      app.add_subcommand("verify", "re-check a partition file and report gaps");
  add_common(c_verify, true);

  CLI::App* c_pb = app.add_subcommand("partition-branchings",
                                      "equitable partition into k branchings");
  add_common(c_pb, true);
  c_pb->add_option("--k", flag_k, "number of parts");
  c_pb->add_flag("--verify", verify, "re-check all invariants before writing");

  CLI::App* c_pmf = app.add_subcommand(
      "partition-mf", "equitable partition into k matching forests");
  add_common(c_pmf, true);
  c_pmf->add_option("--k", flag_k, "number of parts");
  c_pmf->add_flag("--verify", verify,
                  "re-check all invariants before writing");

  CLI::App* c_pbb = app.add_subcommand(
      "partition-bb", "equitable partition into k b-branchings");
  add_common(c_pbb, true);
  c_pbb->add_option("--k", flag_k, "number of parts");
  c_pbb->add_flag("--verify", verify,
                  "re-check all invariants before writing");

  CLI::App* c_dec = app.add_subcommand(
      "decompose", "integer decomposition of an arc vector");
  add_common(c_dec, true);
  c_dec->add_option("--query", query_path, "decomposition query JSON file")
      ->required();

  CLI::App* c_gen =
      app.add_subcommand("gen", "generate a partitionable instance");
  c_gen->add_option("--kind", kind,
                    "branching | matching-forest | b-branching")
      ->required();
  c_gen->add_option("--output", output_str, "write the instance here")
      ->required();
  c_gen->add_option("--seed", gen_cfg.seed, "generator seed");
  c_gen->add_option("--n", gen_cfg.n, "vertex count");
  c_gen->add_option("--k", gen_cfg.k, "number of parts");
  c_gen->add_option("--edge-density", gen_cfg.edge_density,
                    "edge attempts per part, scaled by n(n-1)/2");
  c_gen->add_option("--arc-density", gen_cfg.arc_density,
                    "arc attempts per part, scaled by n(n-1)/2");
  c_gen->add_option("--b-max", gen_cfg.b_max, "max capacity entry");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      json cj = json::parse(read_file(config_path));
      if (cj.contains("fallback_threshold"))
        limits.fallback_threshold = cj["fallback_threshold"].get<int>();
      if (cj.contains("size_limit"))
        limits.size_limit = cj["size_limit"].get<int>();
      if (cj.contains("exhaustive_vertex_limit"))
        limits.exhaustive_vertex_limit =
            cj["exhaustive_vertex_limit"].get<int>();
    }
    // flags override the config file when both are present
    for (CLI::App* cmd : {c_pb, c_pmf, c_pbb, c_dec, c_check, c_verify}) {
      if (!cmd->parsed()) continue;
      if (cmd->count("--fallback-threshold"))
        limits.fallback_threshold =
            cmd->get_option("--fallback-threshold")->as<int>();
      if (cmd->count("--size-limit"))
        limits.size_limit = cmd->get_option("--size-limit")->as<int>();
    }

    std::optional<std::string> output;
    if (!output_str.empty()) output = output_str;

    if (c_check->parsed()) return run_check(input_path, false, "check");
    if (c_verify->parsed()) return run_check(input_path, true, "verify");
    if (c_pb->parsed())
      return run_partition_branchings(input_path, output, flag_k, verify,
                                      limits);
    if (c_pmf->parsed())
      return run_partition_mf(input_path, output, flag_k, verify, limits);
    if (c_pbb->parsed())
      return run_partition_bb(input_path, output, flag_k, verify, limits);
    if (c_dec->parsed())
      return run_decompose(input_path, query_path, output, limits);
    if (c_gen->parsed()) return run_gen(kind, gen_cfg, output_str);
  } catch (const equipart::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const equipart::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << std::endl;
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}
