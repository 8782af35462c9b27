#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/partial_order.hpp"

namespace csl {

struct SeparationQuery {
  NodeSet a = 0;
  NodeSet b = 0;
  NodeSet c = 0;
};

/// A path connects given C iff every collider inner node is in C or an
/// ancestor of a node in C, and every non-collider inner node avoids C.
bool is_connecting_path(const Graph& g, const std::vector<int>& path,
                        NodeSet c);

/// m-separation by exhaustive path search (depth-first over simple paths,
/// pruning prefixes whose fixed inner nodes are already blocked).
bool m_separated(const Graph& g, const SeparationQuery& q);

/// Same verdict, but returns a connecting path when the sets are connected.
std::optional<std::vector<int>> connecting_path(const Graph& g,
                                                const SeparationQuery& q);

/// Plain reference: enumerate every simple path and test each in isolation.
/// Slower than m_separated and kept as the differential-testing oracle.
bool m_separated_ref(const Graph& g, const SeparationQuery& q);

/// J(G): every separated triple over the node set, materialized. The node
/// budget guards the 4^n sweep.
IndependenceModel induced_model(const Graph& g,
                                int bound = IndependenceModel::kDefaultBound);

/// OpenMP variant of induced_model; verdict-identical by construction
/// (triples are independent). jobs = 0 leaves the thread count alone.
IndependenceModel induced_model_parallel(
    const Graph& g, int bound = IndependenceModel::kDefaultBound,
    int jobs = 0);

struct MaximalityVerdict {
  bool ok = false;
  std::optional<PairWitness> witness;  // inseparable nonadjacent pair
};

/// Every nonadjacent pair is separated by some C. Tries an(i,j) first and
/// falls back to scanning all conditioning sets.
MaximalityVerdict is_maximal(const Graph& g);

struct LocalMarkovWitness {
  int node = -1;
  NodeSet ancestral_set = 0;
  NodeSet blanket = 0;
  std::string text;
};

struct LocalMarkovVerdict {
  bool ok = false;
  std::optional<LocalMarkovWitness> witness;
};

/// Ordered local Markov property of the model w.r.t. an order respecting the
/// arrows of g: for every node i and ancestral A with i in A subseteq pst(i),
/// the model contains <i, A \ (mb(i,A) u {i}) | mb(i,A)>. Equivalent to the
/// global Markov property when the order is total; partial orders only give
/// the "global implies local" direction.
LocalMarkovVerdict ordered_local_markov_holds(const IndependenceModel& j,
                                              const Graph& g,
                                              const PartialOrder& ord);

}  // namespace csl
