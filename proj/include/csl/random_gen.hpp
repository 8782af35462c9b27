#pragma once

#include <optional>
#include <random>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/partial_order.hpp"
#include "csl/scm.hpp"

namespace csl {

using Rng = std::mt19937_64;

/// Ancestral by construction: arrows follow a random topological order and
/// arcs are only placed between directionally unrelated nodes.
Graph random_ancestral_graph(Rng& rng, int n, double edge_prob,
                             double arc_fraction);

Graph random_dag(Rng& rng, int n, double edge_prob);

/// Random maximal ancestral graph (rejection over random_ancestral_graph).
Graph random_maximal_ancestral_graph(Rng& rng, int n, double edge_prob,
                                     double arc_fraction);

/// Random valid order of g: the minimal order plus a few extra comparable
/// pairs that keep validity.
PartialOrder random_valid_order(Rng& rng, const Graph& g, int extra_pairs);

/// Random total order with every arrow's tail above its head (a linear
/// extension of ancestry; arc endpoints end up comparable).
PartialOrder random_consistent_total_order(Rng& rng, const Graph& g);

/// J(G) plus `extra` random symmetric singleton-pair statements.
IndependenceModel perturbed_graph_model(Rng& rng, const Graph& g, int extra,
                                        int bound);

struct ScmGenOptions {
  int max_support = 3;          // endogenous support sizes in 2..max_support
  bool force_injective = false; // mechanisms injective in the noise argument
  bool translation = false;     // modular-translation mechanisms w/ uniform
                                // noise (injective + surjective)
};

/// Random valid SCM over the given causal graph. Arc-component noise is
/// built from one independent non-degenerate variable per arc so that the
/// dependence structure mirrors the arcs exactly.
Scm random_scm(Rng& rng, const Graph& g, const ScmGenOptions& opt = {});

}  // namespace csl
