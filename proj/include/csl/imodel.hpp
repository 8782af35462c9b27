#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/nodeset.hpp"

namespace csl {

/// Explicit independence model: a finite set of triples <A,B|C> of pairwise
/// disjoint node subsets. Storage is symmetry-normalized (<A,B|C> is stored
/// iff <B,A|C> is) and triples with empty A or B are held by convention
/// rather than materialized.
///
/// A triple is addressed by its packed index: node v contributes the base-4
/// digit 0 (outside), 1 (in A), 2 (in B) or 3 (in C), weighted by 4^v. All
/// deterministic "first witness" guarantees refer to this index order.
class IndependenceModel {
 public:
  static constexpr int kDefaultBound = 8;
  static constexpr int kHardBound = 12;

  IndependenceModel() = default;
  explicit IndependenceModel(std::vector<std::string> labels,
                             int bound = kDefaultBound);

  int node_count() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  NodeSet universe() const { return full_set(n_); }

  /// Number of packed triple slots, 4^n.
  std::size_t space_size() const { return std::size_t{1} << (2 * n_); }

  static std::size_t pack(NodeSet a, NodeSet b, NodeSet c);
  struct Triple {
    NodeSet a, b, c;
  };
  Triple unpack(std::size_t idx) const;

  /// Membership; triples with empty A or B are in every model.
  bool contains(NodeSet a, NodeSet b, NodeSet c) const;
  bool contains_index(std::size_t idx) const;

  void insert(NodeSet a, NodeSet b, NodeSet c);  // also inserts <B,A|C>
  void erase(NodeSet a, NodeSet b, NodeSet c);   // also erases <B,A|C>
  void set_index(std::size_t idx, bool value);   // raw, used by sweeps

  /// Stored statements (both symmetric orientations count).
  std::size_t statement_count() const { return count_; }

  template <typename F>
  void for_each_statement(F&& f) const {  // ascending packed index
    for (std::size_t idx = 0; idx < space_size(); ++idx) {
      if (contains_index(idx)) {
        Triple t = unpack(idx);
        f(t.a, t.b, t.c);
      }
    }
  }

  bool is_subset_of(const IndependenceModel& other) const;
  /// First packed index present here but absent from other, if any.
  std::optional<std::size_t> first_statement_not_in(
      const IndependenceModel& other) const;

  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  std::string describe_triple(NodeSet a, NodeSet b, NodeSet c) const;
  std::string describe_set(NodeSet s) const;

  friend bool operator==(const IndependenceModel& x,
                         const IndependenceModel& y) {
    return x.labels_ == y.labels_ && x.bits_ == y.bits_;
  }

 private:
  void check_triple(NodeSet a, NodeSet b, NodeSet c) const;

  std::vector<std::string> labels_;
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
  std::size_t count_ = 0;
  std::string provenance_;
};

// --- model-only checks --------------------------------------------------

/// sk(P): edge i - j unless some C separates the pair in the model.
Skeleton skeleton_of_model(const IndependenceModel& j);

/// Restriction to triples avoiding m; the universe shrinks.
IndependenceModel marginalize_model(const IndependenceModel& j, NodeSet m);

struct StabilityWitness {
  int i = -1, k = -1, j = -1;  // V-configuration / path pivot
  NodeSet u = 0;               // inner path nodes (empty for the V case)
  NodeSet c = 0;
  std::string text;
};

struct StabilityVerdict {
  bool ok = false;
  std::optional<StabilityWitness> witness;
};

/// No V-configuration <i,k,j> of sk(P) admits C with both <i,j|C> and
/// <i,j|C u {k}> in the model.
StabilityVerdict v_stable(const IndependenceModel& j);

/// Path version: over paths <i,i1..ir,k,j> in sk(P) with i ~/~ j and every
/// i_r adjacent to j, no C gives both <i,j|U u C> and <i,j|U u C u {k}>.
/// With r = 0 this is exactly the V-stability quantifier.
StabilityVerdict path_stable(const IndependenceModel& j);

// --- checks against a graph ---------------------------------------------

struct TripleWitness {
  NodeSet a = 0, b = 0, c = 0;
  std::string text;
};

struct ModelGraphVerdict {
  bool ok = false;
  std::optional<TripleWitness> witness;
};

/// J(G) subseteq J; witness is a separation missing from the model.
ModelGraphVerdict is_markovian(const IndependenceModel& j, const Graph& g);

/// J == J(G).
bool is_faithful(const IndependenceModel& j, const Graph& g);

/// Markovian and sk(G) == sk(P).
bool is_minimally_markovian(const IndependenceModel& j, const Graph& g);

struct PairWitness {
  int i = -1, j = -1;
  std::string text;
};

struct PairVerdict {
  bool ok = false;
  std::optional<PairWitness> witness;
};

/// For every adjacent pair, <i,j|an(i,j)> is absent from the model.
PairVerdict converse_pairwise_markov(const IndependenceModel& j,
                                     const Graph& g);

struct OrientationWitness {
  int a = -1, l = -1, b = -1;
  NodeSet s = 0;
  std::string text;
};

struct OrientationVerdict {
  bool ok = false;
  std::optional<OrientationWitness> witness;
};

/// For every V-configuration <a,l,b> of g and every S under which a and b are
/// m-connected in g, the model must not contain <a,b|S>.
OrientationVerdict orientation_faithful(const IndependenceModel& j,
                                        const Graph& g);

/// Universe compatibility helper (labels must match exactly).
void require_same_universe(const IndependenceModel& j, const Graph& g);

}  // namespace csl
