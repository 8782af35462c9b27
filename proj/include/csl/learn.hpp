#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/partial_order.hpp"

namespace csl {

/// Candidate ceiling: skeletons with more than this many edges are refused
/// unless the caller overrides (3^12 orientation candidates).
inline constexpr int kMaxLearnEdges = 12;

/// All orientations of sk(P) into ancestral (acyclic when dag_only), maximal
/// graphs w.r.t. whose minimal order the model satisfies ordered upward- and
/// downward-stability. Output order follows the candidate index and is
/// deterministic.
std::vector<Graph> stable_orientations(const IndependenceModel& j,
                                       bool dag_only,
                                       bool allow_large = false);

/// OpenMP variant; identical output (candidates are independent and merged
/// by index).
std::vector<Graph> stable_orientations_parallel(const IndependenceModel& j,
                                                bool dag_only,
                                                bool allow_large = false,
                                                int jobs = 0);

struct LearnerOutput {
  std::vector<Graph> graphs;  // all stable orientations
  Graph chosen;               // lexicographically smallest serialization
  bool dag_only = false;
  std::vector<PartialOrder> order_used;  // minimal order per graph
};

/// Brute-force reference learner. Throws PreconditionError when no stable
/// orientation exists (reported, never fabricated).
LearnerOutput natural_learn(const IndependenceModel& j, bool dag_only,
                            bool allow_large = false);

enum class EquivMethod { DagCriterion, MagCriterion, BruteForce };

const char* equiv_method_name(EquivMethod m);

struct EquivalenceVerdict {
  bool equivalent = false;
  EquivMethod method = EquivMethod::BruteForce;
  // Exactly one of these is set when not equivalent.
  std::optional<std::pair<int, int>> skeleton_diff;
  std::optional<std::array<int, 3>> v_config_diff;
  std::optional<std::vector<int>> collider_path_diff;
  std::optional<IndependenceModel::Triple> separation_diff;
  std::string witness_text;
};

/// Markov equivalence through the selected criterion. DagCriterion needs two
/// DAGs, MagCriterion two maximal ancestral graphs; BruteForce compares
/// induced models.
EquivalenceVerdict markov_equivalent(const Graph& g, const Graph& h,
                                     EquivMethod method);

struct UniquenessVerdict {
  bool ok = false;
  std::optional<std::pair<Graph, Graph>> witness;  // non-equivalent outputs
  std::string text;
};

/// All stable orientations pairwise Markov equivalent.
UniquenessVerdict uniqueness_property(const IndependenceModel& j,
                                      bool allow_large = false);

/// Same with the search restricted to DAGs.
UniquenessVerdict dag_uniqueness_property(const IndependenceModel& j,
                                          bool allow_large = false);

}  // namespace csl
