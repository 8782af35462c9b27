#include "csl/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "csl/audit.hpp"
#include "csl/fixtures.hpp"
#include "csl/io.hpp"
#include "csl/learn.hpp"
#include "csl/parallel.hpp"
#include "csl/properties.hpp"
#include "csl/report.hpp"
#include "csl/separation.hpp"
#include "csl/version.hpp"

namespace csl::cli {

namespace {

struct Common {
  bool json = false;
  bool strict = false;
  int jobs = 0;
  int max_nodes = IndependenceModel::kDefaultBound;
};

int verdict_exit(const Common& c, bool ok) {
  return (c.strict && !ok) ? 1 : 0;
}

NodeSet parse_set_arg(const Graph& g, const std::string& csv) {
  NodeSet out = 0;
  if (csv.empty()) return out;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ',')) out |= bit(g.node(item));
  return out;
}

Scm load_scm_or_builtin(const std::string& arg) {
  if (auto s = builtin_scm(arg)) return *s;
  return load_scm(arg);
}

int cmd_graph_check(const Common& c, const std::string& path) {
  Graph g = load_graph(path);
  auto anc = is_ancestral(g);
  auto maxi = anc.ok ? is_maximal(g) : MaximalityVerdict{};
  if (c.json) {
    nlohmann::ordered_json out;
    out["nodes"] = g.node_count();
    out["edges"] = g.edge_count();
    out["ancestral"] = anc.ok;
    if (!anc.ok) out["witness"] = anc.text;
    if (anc.ok) {
      out["maximal"] = maxi.ok;
      if (!maxi.ok) out["witness"] = maxi.witness->text;
      out["dag"] = is_dag(g);
    }
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "nodes: " << g.node_count() << ", edges: " << g.edge_count()
              << '\n';
    std::cout << "ancestral: " << (anc.ok ? "yes" : "NO (" + anc.text + ")")
              << '\n';
    if (anc.ok) {
      std::cout << "maximal: "
                << (maxi.ok ? "yes" : "NO (" + maxi.witness->text + ")")
                << '\n';
      std::cout << "dag: " << (is_dag(g) ? "yes" : "no") << '\n';
    }
  }
  return verdict_exit(c, anc.ok && (!anc.ok || maxi.ok));
}

int cmd_msep(const Common& c, const std::string& path, const std::string& a,
             const std::string& b, const std::string& cond) {
  Graph g = load_graph(path);
  SeparationQuery q{parse_set_arg(g, a), parse_set_arg(g, b),
                    parse_set_arg(g, cond)};
  auto witness = connecting_path(g, q);
  bool separated = !witness.has_value();
  if (c.json) {
    nlohmann::ordered_json out;
    out["separated"] = separated;
    if (witness) out["connecting_path"] = describe_path(g, *witness);
    std::cout << out.dump(2) << '\n';
  } else if (separated) {
    std::cout << "separated\n";
  } else {
    std::cout << "connected: " << describe_path(g, *witness) << '\n';
  }
  return verdict_exit(c, separated);
}

int cmd_model(const Common& c, const std::string& path,
              const std::string& graph_path) {
  std::vector<std::string> warnings;
  IndependenceModel j = load_model(path, &warnings, c.max_nodes);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  std::vector<std::pair<std::string, bool>> props;
  for (PropertyId p :
       {PropertyId::Symmetry, PropertyId::Decomposition, PropertyId::WeakUnion,
        PropertyId::Contraction, PropertyId::Intersection,
        PropertyId::Composition, PropertyId::SingletonTransitivity})
    props.emplace_back(property_name(p), check_property(j, p).ok);
  if (!graph_path.empty()) {
    Graph g = load_graph(graph_path);
    require_same_universe(j, g);
    PartialOrder ord = minimal_order(g);
    props.emplace_back(
        property_name(PropertyId::OrderedUpward),
        check_property(j, PropertyId::OrderedUpward, &ord).ok);
    props.emplace_back(
        property_name(PropertyId::OrderedDownward),
        check_property(j, PropertyId::OrderedDownward, &ord).ok);
  }
  props.emplace_back("v-stability", v_stable(j).ok);
  props.emplace_back("path-stability", path_stable(j).ok);

  if (c.json) {
    nlohmann::ordered_json out;
    out["nodes"] = j.node_count();
    out["statements"] = j.statement_count();
    out["skeleton_edges"] = skeleton_of_model(j).edge_count();
    nlohmann::ordered_json jp;
    for (auto& [name, ok] : props) jp[name] = ok;
    out["properties"] = std::move(jp);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "nodes: " << j.node_count()
              << ", statements: " << j.statement_count()
              << ", skeleton edges: " << skeleton_of_model(j).edge_count()
              << '\n';
    for (auto& [name, ok] : props)
      std::cout << "  " << name << ": " << (ok ? "yes" : "no") << '\n';
  }
  return 0;
}

int cmd_learn(const Common& c, const std::string& path, bool dags_only,
              bool allow_large) {
  std::vector<std::string> warnings;
  IndependenceModel j = load_model(path, &warnings, c.max_nodes);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  std::vector<Graph> graphs =
      c.jobs != 1 ? stable_orientations_parallel(j, dags_only, allow_large,
                                                 c.jobs)
                  : stable_orientations(j, dags_only, allow_large);
  if (c.json) {
    nlohmann::ordered_json out;
    out["dags_only"] = dags_only;
    out["count"] = graphs.size();
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const Graph& g : graphs) list.push_back(serialize_graph(g));
    out["graphs"] = std::move(list);
    if (!graphs.empty()) {
      LearnerOutput lo = natural_learn(j, dags_only, allow_large);
      out["chosen"] = serialize_graph(lo.chosen);
    }
    std::cout << out.dump(2) << '\n';
  } else if (graphs.empty()) {
    std::cout << "no stable orientation: the model admits no natural output\n";
  } else {
    LearnerOutput lo = natural_learn(j, dags_only, allow_large);
    std::cout << graphs.size() << " stable orientation(s)\n";
    for (std::size_t i = 0; i < graphs.size(); ++i)
      std::cout << "--- graph " << i << " ---\n"
                << serialize_graph(graphs[i]);
    std::cout << "--- chosen ---\n" << serialize_graph(lo.chosen);
  }
  return verdict_exit(c, !graphs.empty());
}

int cmd_equiv(const Common& c, const std::string& p1, const std::string& p2,
              const std::string& method) {
  Graph g = load_graph(p1);
  Graph h = load_graph(p2);
  EquivMethod m;
  if (method == "dag")
    m = EquivMethod::DagCriterion;
  else if (method == "mag")
    m = EquivMethod::MagCriterion;
  else if (method == "brute")
    m = EquivMethod::BruteForce;
  else
    throw Error("unknown method '" + method + "' (dag|mag|brute)");
  auto v = markov_equivalent(g, h, m);
  if (c.json) {
    nlohmann::ordered_json out;
    out["equivalent"] = v.equivalent;
    out["method"] = equiv_method_name(v.method);
    if (!v.equivalent) out["witness"] = v.witness_text;
    std::cout << out.dump(2) << '\n';
  } else if (v.equivalent) {
    std::cout << "equivalent\n";
  } else {
    std::cout << "not equivalent: " << v.witness_text << '\n';
  }
  return verdict_exit(c, v.equivalent);
}

int cmd_audit(const Common& c, const std::string& model_path,
              const std::string& graph_path, bool allow_large) {
  std::vector<std::string> warnings;
  IndependenceModel j = load_model(model_path, &warnings, c.max_nodes);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  Graph g0 = load_graph(graph_path);
  AuditReport r = audit(j, g0, allow_large);
  if (c.json) {
    auto doc = audit_to_json(r);
    doc["inputs"] = {{"model", model_path}, {"graph", graph_path}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << audit_to_text(r);
  }
  return verdict_exit(c, r.consistent);
}

int cmd_scm(const Common& c, const std::string& arg, bool allow_large,
            const std::string& emit_model) {
  Scm s = load_scm_or_builtin(arg);
  ScmAuditReport r = scm_audit(s, allow_large);
  if (!emit_model.empty()) {
    IndependenceModel j = c.jobs != 1
                              ? induced_model_scm_parallel(s, c.max_nodes,
                                                           c.jobs)
                              : induced_model_scm(s, c.max_nodes);
    write_file(emit_model, serialize_model(j));
  }
  if (c.json) {
    auto doc = scm_audit_to_json(r);
    doc["inputs"] = {{"scm", arg}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << scm_audit_to_text(r);
  }
  return verdict_exit(c, r.base.consistent);
}

int cmd_paper(const Common& c, const std::string& id) {
  FixtureResult r = run_fixture(id);
  if (c.json)
    std::cout << fixture_result_to_json(r).dump(2) << '\n';
  else
    std::cout << fixture_result_to_text(r);
  return verdict_exit(c, r.diffs.empty());
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"workbench for constraint-based causal structure learning "
               "over directed ancestral graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cslearn ") + kToolVersion);

  Common common;
  app.add_flag("--json", common.json, "machine-readable output");
  app.add_flag("--strict", common.strict, "exit 1 when a verdict is negative");
  app.add_option("--jobs", common.jobs, "worker threads (0 = default)");
  app.add_option("--max-nodes", common.max_nodes,
                 "node budget for materialized models")
      ->envname("CS_MAX_NODES");

  std::string path, path2, a, b, cond, method = "brute", graph_path,
                                       emit_model;
  bool dags_only = false, allow_large = false;

  auto* c_graph = app.add_subcommand("graph-check", "validate a graph file");
  c_graph->add_option("graph", path)->required();

  auto* c_msep = app.add_subcommand("msep", "m-separation query");
  c_msep->add_option("graph", path)->required();
  c_msep->add_option("--a", a, "left node set, comma separated")->required();
  c_msep->add_option("--b", b, "right node set")->required();
  c_msep->add_option("--c", cond, "conditioning set");

  auto* c_model = app.add_subcommand("model", "inspect an independence model");
  c_model->add_option("model", path)->required();
  c_model->add_option("--graph", graph_path,
                      "graph whose minimal order drives the ordered checks");

  auto* c_learn =
      app.add_subcommand("learn", "enumerate stable orientations of sk(P)");
  c_learn->add_option("model", path)->required();
  c_learn->add_flag("--dags-only", dags_only);
  c_learn->add_flag("--allow-large", allow_large,
                    "lift the orientation-search edge budget");

  auto* c_equiv = app.add_subcommand("equiv", "Markov equivalence of graphs");
  c_equiv->add_option("graph1", path)->required();
  c_equiv->add_option("graph2", path2)->required();
  c_equiv->add_option("--method", method, "dag|mag|brute");

  auto* c_audit =
      app.add_subcommand("audit", "full condition audit of a model");
  c_audit->add_option("model", path)->required();
  c_audit->add_option("--graph", graph_path, "reference causal graph")
      ->required();
  c_audit->add_flag("--allow-large", allow_large);

  auto* c_scm = app.add_subcommand("scm", "audit a structural causal model");
  c_scm->add_option("scm", path, "SCM JSON file or builtin id")->required();
  c_scm->add_flag("--allow-large", allow_large);
  c_scm->add_option("--emit-model", emit_model,
                    "write the induced independence model to a file");

  auto* c_paper =
      app.add_subcommand("paper", "run a bundled worked example end to end");
  c_paper->add_option("id", path)->required();

  // global flags remain usable after the subcommand name
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_jobs(common.jobs);
    if (c_graph->parsed()) return cmd_graph_check(common, path);
    if (c_msep->parsed()) return cmd_msep(common, path, a, b, cond);
    if (c_model->parsed()) return cmd_model(common, path, graph_path);
    if (c_learn->parsed())
      return cmd_learn(common, path, dags_only, allow_large);
    if (c_equiv->parsed()) return cmd_equiv(common, path, path2, method);
    if (c_audit->parsed())
      return cmd_audit(common, path, graph_path, allow_large);
    if (c_scm->parsed()) return cmd_scm(common, path, allow_large, emit_model);
    if (c_paper->parsed()) return cmd_paper(common, path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args);
}

}  // namespace csl::cli
