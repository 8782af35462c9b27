#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/nodeset.hpp"

namespace csl {

/// Strict partial order over node indices, kept transitively closed.
/// greater(a, b) reads "a > b".
class PartialOrder {
 public:
  PartialOrder() = default;
  explicit PartialOrder(int n) : above_(n, 0), below_(n, 0) {}

  int size() const { return static_cast<int>(above_.size()); }
  bool greater(int a, int b) const { return has(above_[b], a); }
  bool comparable(int a, int b) const { return greater(a, b) || greater(b, a); }

  /// Nodes strictly above / below v.
  NodeSet above(int v) const { return above_[v]; }
  NodeSet below(int v) const { return below_[v]; }

  /// Records a > b and closes transitively. Throws OrderError if this would
  /// break irreflexivity or antisymmetry.
  void add_greater(int a, int b);

  /// Comparable pairs (a, b) with a > b, sorted.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  std::vector<NodeSet> above_, below_;
};

/// The order with a > b exactly when a is an ancestor of b. Arc endpoints and
/// directionally unrelated nodes stay incomparable. Rejects non-ancestral
/// graphs.
PartialOrder minimal_order(const Graph& g);

struct OrderCheck {
  bool ok = false;
  std::optional<Edge> violating_edge;
  std::string text;
};

/// Valid orders: i -> j forces i > j, arcs force incomparable endpoints.
OrderCheck is_valid_order(const Graph& g, const PartialOrder& ord);

}  // namespace csl
