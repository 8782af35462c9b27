#include "csl/audit.hpp"

#include <sstream>

#include "csl/properties.hpp"
#include "csl/separation.hpp"

namespace csl {

namespace {

std::string compact_graph(const Graph& g) {
  std::ostringstream os;
  bool first = true;
  for (const Edge& e : g.edges()) {
    if (!first) os << ", ";
    os << g.label(e.tail) << (e.mark == Mark::Arrow ? " -> " : " <-> ")
       << g.label(e.head);
    first = false;
  }
  if (first) os << "(no edges)";
  return os.str();
}

Flag from_property(const PropertyVerdict& v) {
  return v.ok ? Flag::yes() : Flag::no(v.witness->text);
}

std::optional<std::pair<int, int>> skeleton_diff(const Skeleton& a,
                                                 const Skeleton& b) {
  for (int i = 0; i < a.node_count(); ++i)
    for (int j = i + 1; j < a.node_count(); ++j)
      if (a.adjacent(i, j) != b.adjacent(i, j)) return std::pair{i, j};
  return std::nullopt;
}

LedgerEntry make_entry(const std::string& name, bool hyp, bool concl,
                       const std::string& note) {
  LedgerEntry e;
  e.name = name;
  e.hypotheses_met = hyp;
  e.note = note;
  if (hyp) {
    e.conclusion_observed = concl;
    e.consistent = concl;
  }
  return e;
}

}  // namespace

std::vector<std::pair<std::string, const Flag*>> AuditReport::flags() const {
  return {
      {"markovian", &markovian},
      {"converse_pairwise", &converse_pairwise},
      {"ordered_up", &ordered_up},
      {"ordered_down", &ordered_down},
      {"path_stable", &path_stable},
      {"v_stable", &v_stable},
      {"skeleton_match", &skeleton_match},
      {"minimally_markovian", &minimally_markovian},
      {"faithful", &faithful},
      {"singleton_transitive", &singleton_transitive},
      {"graphoid", &graphoid},
      {"compositional_graphoid", &compositional_graphoid},
      {"orientation_faithful", &orientation_faithful},
      {"uniqueness", &uniqueness},
      {"dag_uniqueness", &dag_uniqueness},
      {"learner_equivalent", &learner_equivalent},
      {"learner_equivalent_dag", &learner_equivalent_dag},
  };
}

AuditReport audit(const IndependenceModel& j, const Graph& g0,
                  bool allow_large) {
  require_same_universe(j, g0);
  AuditReport r;
  r.subject = j.provenance();
  r.graph_name = compact_graph(g0);

  auto mk = is_markovian(j, g0);
  r.markovian = mk.ok ? Flag::yes() : Flag::no(mk.witness->text);
  auto cp = converse_pairwise_markov(j, g0);
  r.converse_pairwise = cp.ok ? Flag::yes() : Flag::no(cp.witness->text);

  PartialOrder ord = minimal_order(g0);
  r.ordered_up = from_property(check_property(j, PropertyId::OrderedUpward, &ord));
  r.ordered_down =
      from_property(check_property(j, PropertyId::OrderedDownward, &ord));

  auto ps = path_stable(j);
  r.path_stable = ps.ok ? Flag::yes() : Flag::no(ps.witness->text);
  auto vs = v_stable(j);
  r.v_stable = vs.ok ? Flag::yes() : Flag::no(vs.witness->text);

  Skeleton sk_model = skeleton_of_model(j);
  Skeleton sk_graph = skeleton(g0);
  if (sk_model == sk_graph) {
    r.skeleton_match = Flag::yes();
  } else {
    auto d = skeleton_diff(sk_graph, sk_model);
    r.skeleton_match =
        Flag::no("skeletons differ at pair (" + g0.label(d->first) + "," +
                 g0.label(d->second) + ")");
  }

  if (r.markovian.value && r.skeleton_match.value)
    r.minimally_markovian = Flag::yes();
  else
    r.minimally_markovian = Flag::no(
        !r.markovian.value ? r.markovian.witness : r.skeleton_match.witness);

  if (is_faithful(j, g0)) {
    r.faithful = Flag::yes();
  } else {
    IndependenceModel jg = induced_model(g0, IndependenceModel::kHardBound);
    if (auto diff = j.first_statement_not_in(jg)) {
      auto t = j.unpack(*diff);
      r.faithful = Flag::no("statement " + j.describe_triple(t.a, t.b, t.c) +
                            " in the model but not separated in the graph");
    } else {
      auto t = jg.unpack(*jg.first_statement_not_in(j));
      r.faithful = Flag::no("separation " + jg.describe_triple(t.a, t.b, t.c) +
                            " missing from the model");
    }
  }

  r.singleton_transitive =
      from_property(check_property(j, PropertyId::SingletonTransitivity));
  r.graphoid = Flag::yes();
  for (PropertyId p :
       {PropertyId::Symmetry, PropertyId::Decomposition, PropertyId::WeakUnion,
        PropertyId::Contraction, PropertyId::Intersection}) {
    auto v = check_property(j, p);
    if (!v.ok) {
      r.graphoid = Flag::no(v.witness->text);
      break;
    }
  }
  if (r.graphoid.value) {
    auto v = check_property(j, PropertyId::Composition);
    r.compositional_graphoid =
        v.ok ? Flag::yes() : Flag::no(v.witness->text);
  } else {
    r.compositional_graphoid = Flag::no(r.graphoid.witness);
  }

  auto of = orientation_faithful(j, g0);
  r.orientation_faithful = of.ok ? Flag::yes() : Flag::no(of.witness->text);

  try {
    auto u = uniqueness_property(j, allow_large);
    r.uniqueness = u.ok ? Flag::yes() : Flag::no(u.text);
    auto du = dag_uniqueness_property(j, allow_large);
    r.dag_uniqueness = du.ok ? Flag::yes() : Flag::no(du.text);
  } catch (const BoundError& e) {
    r.uniqueness = Flag::na(e.what());
    r.dag_uniqueness = Flag::na(e.what());
  }

  bool g0_maximal = is_maximal(g0).ok;
  EquivMethod method =
      g0_maximal ? EquivMethod::MagCriterion : EquivMethod::BruteForce;
  try {
    auto outputs = stable_orientations(j, false, allow_large);
    if (outputs.empty()) {
      r.learner_equivalent = Flag::no("no stable orientation exists");
    } else {
      r.learner_equivalent = Flag::yes();
      for (const Graph& g : outputs) {
        auto v = markov_equivalent(g, g0, method);
        if (!v.equivalent) {
          r.learner_equivalent = Flag::no(
              "output (" + compact_graph(g) + ") not equivalent: " +
              v.witness_text);
          break;
        }
      }
    }
    if (!is_dag(g0)) {
      r.learner_equivalent_dag = Flag::na("reference graph is not a DAG");
    } else {
      auto dag_outputs = stable_orientations(j, true, allow_large);
      if (dag_outputs.empty()) {
        r.learner_equivalent_dag = Flag::no("no stable DAG orientation exists");
      } else {
        r.learner_equivalent_dag = Flag::yes();
        for (const Graph& g : dag_outputs) {
          auto v = markov_equivalent(g, g0, EquivMethod::DagCriterion);
          if (!v.equivalent) {
            r.learner_equivalent_dag = Flag::no(
                "DAG output (" + compact_graph(g) + ") not equivalent: " +
                v.witness_text);
            break;
          }
        }
      }
    }
  } catch (const BoundError& e) {
    r.learner_equivalent = Flag::na(e.what());
    r.learner_equivalent_dag = Flag::na(e.what());
  }

  bool base_hyp = r.markovian.value && r.converse_pairwise.value &&
                  r.ordered_up.value && r.ordered_down.value;
  r.ledger.push_back(make_entry(
      "skeleton-recovery", base_hyp, r.skeleton_match.value,
      "markovian + converse pairwise + ordered stability recover sk(P)"));
  r.ledger.push_back(make_entry(
      "minimal-markov", base_hyp, r.minimally_markovian.value,
      "the same hypotheses force minimal Markovness"));
  if (r.learner_equivalent.applicable)
    r.ledger.push_back(make_entry(
        "learner-correctness", base_hyp && r.path_stable.value,
        r.learner_equivalent.value,
        "adding path-stability makes every output Markov equivalent"));
  if (r.learner_equivalent_dag.applicable)
    r.ledger.push_back(make_entry(
        "learner-correctness-dag",
        base_hyp && r.v_stable.value && is_dag(g0),
        r.learner_equivalent_dag.value,
        "for DAGs, V-stability suffices for the DAG-restricted search"));

  r.consistent = true;
  for (const LedgerEntry& e : r.ledger)
    if (!e.consistent) r.consistent = false;
  return r;
}

ScmAuditReport scm_audit(const Scm& s, bool allow_large) {
  ScmAuditReport r;
  IndependenceModel j = induced_model_scm(s);
  r.base = audit(j, s.graph(), allow_large);
  r.base.subject = j.provenance();

  auto pos = check_positivity(s);
  r.positivity = pos.ok ? Flag::yes() : Flag::no(pos.witness->text);
  auto ncf = check_non_constant_fibers(s);
  r.non_constant_fibers = ncf.ok ? Flag::yes() : Flag::no(ncf.witness->text);
  auto inj = check_noise_injective(s);
  r.noise_injective = inj.ok ? Flag::yes() : Flag::no(inj.witness->text);
  if (inj.ok) {
    auto sur = check_noise_surjective(s);
    r.noise_surjective = sur.ok ? Flag::yes() : Flag::no(sur.witness->text);
  } else {
    r.noise_surjective =
        Flag::na("noise injectivity fails; the inverse is undefined");
  }
  for (auto [v, unif] : check_noise_uniform(s))
    r.noise_uniform.emplace_back(s.graph().label(v), unif);

  r.base.ledger.push_back(make_entry("scm-markov", true,
                                     r.base.markovian.value,
                                     "an SCM is always Markovian to its graph"));
  r.base.ledger.push_back(make_entry(
      "converse-from-mechanisms",
      r.positivity.value && r.non_constant_fibers.value &&
          r.noise_injective.value,
      r.base.converse_pairwise.value,
      "positivity + non-constant fibers + noise injectivity give the "
      "converse pairwise Markov property"));

  // Uniform forcing: an independent arrow pair under injective + surjective
  // mechanisms and positivity forces uniform noise and output at the child.
  if (r.positivity.value && r.noise_injective.value &&
      r.noise_surjective.value) {
    bool any_ci_arrow = false;
    bool conclusion = true;
    JointTable t = joint_distribution(s);
    for (const Edge& e : s.graph().edges()) {
      if (e.mark != Mark::Arrow) continue;
      int child = e.head, parent = e.tail;
      NodeSet cond = anc_pair(s.graph(), child, parent);
      if (!ci_query(t, {bit(child), bit(parent), cond})) continue;
      any_ci_arrow = true;
      auto noise = s.noise_marginal(child);
      for (const Rational& p : noise)
        if (p != noise[0]) conclusion = false;
      // marginal law of the child
      std::vector<Rational> marg(s.support(child).size(), Rational(0));
      t.for_each_cell([&](const std::vector<int>& posv, const Rational& p) {
        marg[posv[child]] += p;
      });
      std::vector<Rational> positive;
      for (const Rational& p : marg)
        if (p > 0) positive.push_back(p);
      for (const Rational& p : positive)
        if (p != positive[0]) conclusion = false;
      if (positive.size() != noise.size()) conclusion = false;
    }
    r.base.ledger.push_back(make_entry(
        "uniform-forcing", any_ci_arrow, conclusion,
        "independence across an arrow forces uniform noise and child "
        "marginal with matching support sizes"));
  }

  for (const LedgerEntry& e : r.base.ledger)
    if (!e.consistent) r.base.consistent = false;
  return r;
}

}  // namespace csl
