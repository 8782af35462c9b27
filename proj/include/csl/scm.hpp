#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/separation.hpp"

namespace csl {

/// Exact rational probability. Every comparison in this module is exact;
/// there is no tolerance anywhere.
using Rational = mpq_class;

using Value = int;                 // variable values are small integers
using ValueTuple = std::vector<Value>;

/// One joint probability table row over a node tuple.
struct BlockRow {
  ValueTuple values;  // one entry per block node, in block node order
  Rational prob;
};

/// Joint noise table for one arc-connected component.
struct NoiseBlock {
  std::vector<int> nodes;  // ascending node indices
  std::vector<BlockRow> rows;
};

/// Mechanism row: X_v = out when the parents (in ascending node order) take
/// `parents` and the noise takes `noise`.
struct MechanismRow {
  ValueTuple parents;
  Value noise;
  Value out;
};

/// Finite discrete structural causal model with exact rational noise.
/// Construction validates the full contract: the graph is ancestral, noise
/// blocks are exactly the arc-components, block tables sum to one and their
/// dependence structure mirrors the arcs, and mechanisms are total lookup
/// tables over parent supports x noise support.
class Scm {
 public:
  Scm(Graph graph, std::vector<std::vector<Value>> supports,
      std::vector<NoiseBlock> noise_blocks,
      std::vector<std::vector<MechanismRow>> mechanisms,
      std::string name = "");

  const Graph& graph() const { return graph_; }
  const std::string& name() const { return name_; }
  int node_count() const { return graph_.node_count(); }
  const std::vector<Value>& support(int v) const { return supports_[v]; }
  const std::vector<Value>& noise_support(int v) const {
    return noise_supports_[v];
  }
  const std::vector<NoiseBlock>& noise_blocks() const { return noise_blocks_; }
  const std::vector<MechanismRow>& mechanism(int v) const {
    return mechanisms_[v];
  }

  /// mechanism evaluated on (parent values in ascending node order, noise).
  Value apply_mechanism(int v, const ValueTuple& parent_values,
                        Value noise) const;

  /// Marginal law of eps_v over its support, in noise_support(v) order.
  std::vector<Rational> noise_marginal(int v) const;

 private:
  void validate();
  std::string describe_block_split(const NoiseBlock& b, NodeSet sa,
                                   NodeSet sb) const;

  Graph graph_;
  std::string name_;
  std::vector<std::vector<Value>> supports_;
  std::vector<std::vector<Value>> noise_supports_;  // derived from blocks
  std::vector<NoiseBlock> noise_blocks_;
  std::vector<std::vector<MechanismRow>> mechanisms_;
  // mechanism lookup: per node, dense index over (parents, noise) positions
  std::vector<std::vector<Value>> mech_dense_;
};

/// Exact joint distribution over the endogenous tuple, dense over the
/// product of supports.
class JointTable {
 public:
  JointTable(std::vector<std::vector<Value>> supports,
             std::vector<std::string> labels);

  int node_count() const { return static_cast<int>(supports_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Value>& support(int v) const { return supports_[v]; }

  std::size_t cell_count() const { return probs_.size(); }
  Rational& cell(const std::vector<int>& positions);  // by support positions
  const Rational& cell(const std::vector<int>& positions) const;

  template <typename F>
  void for_each_cell(F&& f) const {  // f(positions, prob)
    // cell() treats node 0 as the most significant digit, so the last node
    // advances fastest here.
    std::vector<int> pos(node_count(), 0);
    for (std::size_t idx = 0; idx < probs_.size(); ++idx) {
      f(pos, probs_[idx]);
      for (int v = node_count() - 1; v >= 0; --v) {
        if (++pos[v] < static_cast<int>(supports_[v].size())) break;
        pos[v] = 0;
      }
    }
  }

  Rational total() const;

 private:
  std::vector<std::vector<Value>> supports_;
  std::vector<std::string> labels_;
  std::vector<Rational> probs_;
};

/// Push-forward of the block-product noise measure through the mechanisms.
JointTable joint_distribution(const Scm& s);

/// Exact conditional-independence test on the joint distribution.
bool ci_query(const Scm& s, const SeparationQuery& q);
bool ci_query(const JointTable& t, const SeparationQuery& q);

/// J(P) of the SCM: every disjoint triple passing ci_query.
IndependenceModel induced_model_scm(
    const Scm& s, int bound = IndependenceModel::kDefaultBound);
IndependenceModel induced_model_scm_parallel(
    const Scm& s, int bound = IndependenceModel::kDefaultBound, int jobs = 0);

// --- mechanism / distribution conditions --------------------------------

struct PositivityWitness {
  NodeSet a = 0, b = 0;
  ValueTuple xa, xb;
  std::string text;
};

struct PositivityVerdict {
  bool ok = false;
  std::optional<PositivityWitness> witness;
};

/// Finite-support positivity: conditioning on any positive-probability
/// event never removes support from a disjoint tuple.
PositivityVerdict check_positivity(const Scm& s);

struct MechanismWitness {
  int node = -1;
  int parent = -1;  // offending parent node (fiber checks)
  ValueTuple parent_values;
  Value e1 = 0, e2 = 0;  // colliding noises (injectivity)
  std::string text;
};

struct MechanismVerdict {
  bool ok = false;
  std::optional<MechanismWitness> witness;
};

/// e -> phi(x, e) injective for every fixed parent tuple.
MechanismVerdict check_noise_injective(const Scm& s);

/// For every mechanism and parent position there is a positive-probability
/// assignment of the other parents under which the output law depends on
/// that parent's value.
MechanismVerdict check_non_constant_fibers(const Scm& s);

/// For every mechanism, parent position and other-parent assignment, some
/// output value has noise preimages sweeping the whole noise support.
/// Requires noise injectivity (throws PreconditionError otherwise).
MechanismVerdict check_noise_surjective(const Scm& s);

/// Per node: is the marginal noise law uniform over its support?
std::vector<std::pair<int, bool>> check_noise_uniform(const Scm& s);

}  // namespace csl
