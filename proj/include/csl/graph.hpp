#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "csl/errors.hpp"
#include "csl/nodeset.hpp"

namespace csl {

enum class Mark : std::uint8_t { Arrow, Arc };

/// One edge of a mixed graph. Arrows run tail -> head; arcs are stored once
/// with tail < head so that edge lists compare structurally.
struct Edge {
  int tail = -1;
  int head = -1;
  Mark mark = Mark::Arrow;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) {
    return std::tuple(std::min(a.tail, a.head), std::max(a.tail, a.head),
                      a.mark, a.tail) <=>
           std::tuple(std::min(b.tail, b.head), std::max(b.tail, b.head),
                      b.mark, b.tail);
  }
};

/// Simple mixed graph with arrows and arcs. Values are immutable once built;
/// every operation below is a pure function of its inputs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels);

  /// Nodes labelled v0, v1, ... — convenient for generated graphs.
  static Graph with_nodes(int n);

  int node_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int node(std::string_view label) const;  // throws GraphError when unknown
  std::optional<int> try_node(std::string_view label) const;
  NodeSet all_nodes() const { return full_set(node_count()); }

  void add_arrow(int tail, int head);
  void add_arc(int a, int b);

  bool adjacent(int a, int b) const { return has(adj_[a], b); }
  bool has_arrow(int tail, int head) const { return has(children_[tail], head); }
  bool has_arc(int a, int b) const { return has(spouses_[a], b); }
  std::optional<Edge> edge_between(int a, int b) const;

  NodeSet parents(int v) const { return parents_[v]; }
  NodeSet children(int v) const { return children_[v]; }
  NodeSet spouses(int v) const { return spouses_[v]; }
  NodeSet neighbors(int v) const { return adj_[v]; }

  /// Canonically ordered edge list (sorted by endpoint pair).
  std::vector<Edge> edges() const;
  int edge_count() const { return edge_count_; }

  std::string describe_nodes(NodeSet s) const;  // "{a,b}" for diagnostics

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_new_edge(int a, int b);

  std::vector<std::string> labels_;
  std::vector<NodeSet> parents_, children_, spouses_, adj_;
  int edge_count_ = 0;
};

/// Undirected view: the skeleton of a graph or of an independence model.
class Skeleton {
 public:
  Skeleton() = default;
  explicit Skeleton(std::vector<std::string> labels);

  int node_count() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  void add_edge(int a, int b);
  bool adjacent(int a, int b) const { return has(adj_[a], b); }
  NodeSet neighbors(int v) const { return adj_[v]; }
  std::vector<std::pair<int, int>> edges() const;  // sorted, a < b
  int edge_count() const { return edge_count_; }

  friend bool operator==(const Skeleton& a, const Skeleton& b) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<NodeSet> adj_;
  int edge_count_ = 0;
};

// --- ancestry ---------------------------------------------------------

/// Strict ancestors of i: nodes with a directed path to i (i excluded).
NodeSet ancestors(const Graph& g, int i);

/// Union of an(x) over x in s; does not add s itself.
NodeSet ancestors_of_set(const Graph& g, NodeSet s);

/// an(i,j) = (an(i) u an(j)) \ {i,j}.
NodeSet anc_pair(const Graph& g, int i, int j);

/// True iff an(a) u a == a.
bool is_ancestral_set(const Graph& g, NodeSet a);

struct AncestralVerdict {
  bool ok = false;
  std::vector<int> cycle;             // witnessing directed cycle, if any
  std::optional<Edge> offending_arc;  // arc whose endpoints are related
  std::string text;
};

/// No directed cycle and no arc between a node and one of its ancestors.
AncestralVerdict is_ancestral(const Graph& g);

/// Arrows only and acyclic.
bool is_dag(const Graph& g);

// --- local structure --------------------------------------------------

enum class TripathKind { Collider, NonCollider };

/// Classifies the inner node t of the tripath a - t - b. Endpoints are never
/// classified; both edges must exist.
TripathKind classify_tripath(const Graph& g, int a, int t, int b);

/// Arrowhead at v on the edge between u and v (edge must exist).
bool head_at(const Graph& g, int u, int v);

Skeleton skeleton(const Graph& g);

/// All tripaths <i,t,j> with nonadjacent endpoints and t a collider,
/// canonicalized with i < j and sorted.
std::vector<std::array<int, 3>> collider_v_configurations(const Graph& g);

/// All minimal collider paths, as node sequences with the smaller endpoint
/// first, sorted lexicographically.
std::vector<std::vector<int>> minimal_collider_paths(const Graph& g);

/// Nodes reachable from i along paths whose edges are all arcs, plus i.
NodeSet district(const Graph& g, int i);

/// pa_{G[A]}(dis_{G[A]}(i)) u (dis_{G[A]}(i) \ {i}). Requires a ancestral
/// with i in a and no children of i inside a.
NodeSet markov_blanket(const Graph& g, int i, NodeSet a);

// --- graph surgery ----------------------------------------------------

/// Marginalizes the nodes in m out of g: for every path between retained
/// nodes whose inner nodes are non-colliders inside m, an edge preserving the
/// endpoint marks is generated; then m is removed. Throws RegimeError when
/// two conflicting marks are generated for the same pair.
Graph latent_projection(const Graph& g, NodeSet m);

/// Adds one exogenous parent e_x per node x and moves every arc between
/// endogenous nodes onto the corresponding exogenous pair.
Graph augment(const Graph& g);

// --- path utilities ---------------------------------------------------

/// Every simple path from a to b (node sequences, including <a,...,b>).
std::vector<std::vector<int>> all_simple_paths(const Graph& g, int a, int b);

/// True iff the consecutive pairs of `nodes` are edges of g and no node
/// repeats; paths need at least one edge.
bool is_path_of(const Graph& g, const std::vector<int>& nodes);

std::string describe_path(const Graph& g, const std::vector<int>& nodes);

}  // namespace csl
