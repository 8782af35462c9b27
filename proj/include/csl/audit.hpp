#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/learn.hpp"
#include "csl/scm.hpp"

namespace csl {

/// One audited condition. A false verdict always carries a witness; a flag
/// can also be inapplicable (for example a check whose precondition failed).
struct Flag {
  bool value = false;
  bool applicable = true;
  std::string witness;

  static Flag yes() { return {true, true, ""}; }
  static Flag no(std::string w) { return {false, true, std::move(w)}; }
  static Flag na(std::string w) { return {false, false, std::move(w)}; }
};

/// Hypotheses-to-conclusion record. `consistent` is false exactly when the
/// hypotheses were met but the guaranteed conclusion was not observed.
struct LedgerEntry {
  std::string name;
  bool hypotheses_met = false;
  std::optional<bool> conclusion_observed;  // empty when hypotheses unmet
  bool consistent = true;
  std::string note;
};

struct AuditReport {
  std::string subject;     // provenance of the audited model
  std::string graph_name;  // serialized reference graph header

  Flag markovian;
  Flag converse_pairwise;
  Flag ordered_up;    // w.r.t. minimal order of the reference graph
  Flag ordered_down;
  Flag path_stable;
  Flag v_stable;
  Flag skeleton_match;
  Flag minimally_markovian;
  Flag faithful;
  Flag singleton_transitive;
  Flag graphoid;                // properties 1-5
  Flag compositional_graphoid;  // properties 1-6
  Flag orientation_faithful;
  Flag uniqueness;
  Flag dag_uniqueness;
  Flag learner_equivalent;      // every stable orientation ~ reference graph
  Flag learner_equivalent_dag;  // DAG-restricted variant

  std::vector<LedgerEntry> ledger;
  bool consistent = true;  // conjunction over the ledger

  std::vector<std::pair<std::string, const Flag*>> flags() const;
};

/// Full condition audit of a model against a reference graph.
AuditReport audit(const IndependenceModel& j, const Graph& g0,
                  bool allow_large = false);

struct ScmAuditReport {
  AuditReport base;  // audit of the induced model against the causal graph
  Flag positivity;
  Flag non_constant_fibers;
  Flag noise_injective;
  Flag noise_surjective;
  std::vector<std::pair<std::string, bool>> noise_uniform;  // label -> flag
};

/// SCM-side audit: mechanism/distribution conditions plus the full model
/// audit of J(P) against the causal graph.
ScmAuditReport scm_audit(const Scm& s, bool allow_large = false);

}  // namespace csl
