#include "csl/learn.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csl/io.hpp"
#include "csl/properties.hpp"
#include "csl/separation.hpp"

namespace csl {

namespace {

// Candidate index -> orientation of the skeleton edges. Per edge the digit
// is 0: a -> b, 1: b -> a, 2: a <-> b (arcs only in the general search).
Graph orient(const Skeleton& sk, const std::vector<std::pair<int, int>>& edges,
             std::uint64_t cand, int base) {
  Graph g(sk.labels());
  for (const auto& [a, b] : edges) {
    int digit = static_cast<int>(cand % base);
    cand /= base;
    if (digit == 0)
      g.add_arrow(a, b);
    else if (digit == 1)
      g.add_arrow(b, a);
    else
      g.add_arc(a, b);
  }
  return g;
}

std::optional<Graph> stable_candidate(const IndependenceModel& j,
                                      const Skeleton& sk,
                                      const std::vector<std::pair<int, int>>& edges,
                                      std::uint64_t cand, int base) {
  Graph g = orient(sk, edges, cand, base);
  if (!is_ancestral(g).ok) return std::nullopt;
  if (!is_maximal(g).ok) return std::nullopt;
  PartialOrder ord = minimal_order(g);
  if (!check_property(j, PropertyId::OrderedUpward, &ord).ok)
    return std::nullopt;
  if (!check_property(j, PropertyId::OrderedDownward, &ord).ok)
    return std::nullopt;
  return g;
}

std::uint64_t candidate_count(std::size_t edge_count, int base) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < edge_count; ++i) total *= base;
  return total;
}

std::vector<Graph> stable_orientations_impl(const IndependenceModel& j,
                                            bool dag_only, bool allow_large,
                                            bool parallel, int jobs) {
  Skeleton sk = skeleton_of_model(j);
  auto edges = sk.edges();
  if (!allow_large && static_cast<int>(edges.size()) > kMaxLearnEdges)
    throw BoundError("skeleton has " + std::to_string(edges.size()) +
                     " edges; orientation search refused (limit " +
                     std::to_string(kMaxLearnEdges) + ")");
  int base = dag_only ? 2 : 3;
  std::uint64_t total = candidate_count(edges.size(), base);

  std::vector<Graph> out;
  if (parallel) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#endif
    std::vector<std::pair<std::uint64_t, Graph>> found;
#pragma omp parallel
    {
      std::vector<std::pair<std::uint64_t, Graph>> local;
#pragma omp for schedule(dynamic, 64) nowait
      for (std::int64_t cand = 0; cand < static_cast<std::int64_t>(total);
           ++cand) {
        if (auto g = stable_candidate(j, sk, edges, cand, base))
          local.emplace_back(cand, std::move(*g));
      }
#pragma omp critical
      found.insert(found.end(), local.begin(), local.end());
    }
    std::sort(found.begin(), found.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [_, g] : found) out.push_back(std::move(g));
  } else {
    for (std::uint64_t cand = 0; cand < total; ++cand)
      if (auto g = stable_candidate(j, sk, edges, cand, base))
        out.push_back(std::move(*g));
  }
  return out;
}

}  // namespace

std::vector<Graph> stable_orientations(const IndependenceModel& j,
                                       bool dag_only, bool allow_large) {
  return stable_orientations_impl(j, dag_only, allow_large, false, 0);
}

std::vector<Graph> stable_orientations_parallel(const IndependenceModel& j,
                                                bool dag_only,
                                                bool allow_large, int jobs) {
  return stable_orientations_impl(j, dag_only, allow_large, true, jobs);
}

LearnerOutput natural_learn(const IndependenceModel& j, bool dag_only,
                            bool allow_large) {
  LearnerOutput out;
  out.dag_only = dag_only;
  out.graphs = stable_orientations(j, dag_only, allow_large);
  if (out.graphs.empty())
    throw PreconditionError(
        "no stable orientation: the model admits no natural output");
  std::size_t best = 0;
  std::string best_text = serialize_graph(out.graphs[0]);
  for (std::size_t i = 1; i < out.graphs.size(); ++i) {
    std::string text = serialize_graph(out.graphs[i]);
    if (text < best_text) {
      best = i;
      best_text = std::move(text);
    }
  }
  out.chosen = out.graphs[best];
  for (const Graph& g : out.graphs) out.order_used.push_back(minimal_order(g));
  return out;
}

const char* equiv_method_name(EquivMethod m) {
  switch (m) {
    case EquivMethod::DagCriterion: return "dag";
    case EquivMethod::MagCriterion: return "mag";
    case EquivMethod::BruteForce: return "brute";
  }
  return "?";
}

namespace {

std::optional<std::pair<int, int>> skeleton_difference(const Graph& g,
                                                       const Graph& h) {
  for (int a = 0; a < g.node_count(); ++a)
    for (int b = a + 1; b < g.node_count(); ++b)
      if (g.adjacent(a, b) != h.adjacent(a, b)) return std::pair{a, b};
  return std::nullopt;
}

}  // namespace

EquivalenceVerdict markov_equivalent(const Graph& g, const Graph& h,
                                     EquivMethod method) {
  if (g.labels() != h.labels())
    throw Error("markov_equivalent: node sets differ");
  EquivalenceVerdict v;
  v.method = method;

  if (method == EquivMethod::BruteForce) {
    IndependenceModel jg = induced_model(g, IndependenceModel::kHardBound);
    IndependenceModel jh = induced_model(h, IndependenceModel::kHardBound);
    if (jg == jh) {
      v.equivalent = true;
      return v;
    }
    auto diff = jg.first_statement_not_in(jh);
    const IndependenceModel& owner = diff ? jg : jh;
    if (!diff) diff = jh.first_statement_not_in(jg);
    auto t = owner.unpack(*diff);
    v.separation_diff = t;
    v.witness_text = "separation " + owner.describe_triple(t.a, t.b, t.c) +
                     " holds in one graph only";
    return v;
  }

  if (method == EquivMethod::DagCriterion) {
    if (!is_dag(g) || !is_dag(h))
      throw PreconditionError("dag criterion needs two DAGs");
  } else {
    auto check = [](const Graph& x) {
      return is_ancestral(x).ok && is_maximal(x).ok;
    };
    if (!check(g) || !check(h))
      throw PreconditionError(
          "mag criterion needs two maximal ancestral graphs");
  }

  if (auto d = skeleton_difference(g, h)) {
    v.skeleton_diff = d;
    v.witness_text = "skeletons differ at pair (" + g.label(d->first) + "," +
                     g.label(d->second) + ")";
    return v;
  }

  if (method == EquivMethod::DagCriterion) {
    auto vg = collider_v_configurations(g);
    auto vh = collider_v_configurations(h);
    if (vg != vh) {
      std::vector<std::array<int, 3>> diff;
      std::set_symmetric_difference(vg.begin(), vg.end(), vh.begin(),
                                    vh.end(), std::back_inserter(diff));
      v.v_config_diff = diff.front();
      auto [a, t, b] = diff.front();
      v.witness_text = "collider V-configuration <" + g.label(a) + "," +
                       g.label(t) + "," + g.label(b) + "> in one graph only";
      return v;
    }
  } else {
    auto pg = minimal_collider_paths(g);
    auto ph = minimal_collider_paths(h);
    if (pg != ph) {
      std::vector<std::vector<int>> diff;
      std::set_symmetric_difference(pg.begin(), pg.end(), ph.begin(),
                                    ph.end(), std::back_inserter(diff));
      v.collider_path_diff = diff.front();
      std::ostringstream os;
      os << "minimal collider path <";
      for (std::size_t i = 0; i < diff.front().size(); ++i)
        os << (i ? "," : "") << g.label(diff.front()[i]);
      os << "> in one graph only";
      v.witness_text = os.str();
      return v;
    }
  }
  v.equivalent = true;
  return v;
}

namespace {

UniquenessVerdict uniqueness_impl(const IndependenceModel& j, bool dag_only,
                                  bool allow_large) {
  auto graphs = stable_orientations(j, dag_only, allow_large);
  EquivMethod method =
      dag_only ? EquivMethod::DagCriterion : EquivMethod::MagCriterion;
  for (std::size_t i = 1; i < graphs.size(); ++i) {
    auto verdict = markov_equivalent(graphs[0], graphs[i], method);
    if (!verdict.equivalent) {
      return {false, std::pair{graphs[0], graphs[i]},
              "stable orientations disagree: " + verdict.witness_text};
    }
  }
  return {true, std::nullopt, ""};
}

}  // namespace

UniquenessVerdict uniqueness_property(const IndependenceModel& j,
                                      bool allow_large) {
  return uniqueness_impl(j, false, allow_large);
}

UniquenessVerdict dag_uniqueness_property(const IndependenceModel& j,
                                          bool allow_large) {
  return uniqueness_impl(j, true, allow_large);
}

}  // namespace csl
