#include "csl/partial_order.hpp"

#include <algorithm>

namespace csl {

void PartialOrder::add_greater(int a, int b) {
  if (a == b) throw OrderError("order must be irreflexive");
  if (greater(b, a)) throw OrderError("order must be antisymmetric");
  if (greater(a, b)) return;
  // everything >= a becomes greater than everything <= b
  NodeSet ups = above_[a] | bit(a);
  NodeSet downs = below_[b] | bit(b);
  for_each_node(downs, [&](int d) { above_[d] |= ups; });
  for_each_node(ups, [&](int u) { below_[u] |= downs; });
  for (int v = 0; v < size(); ++v)
    if (has(above_[v], v)) throw OrderError("order must be irreflexive");
}

std::vector<std::pair<int, int>> PartialOrder::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < size(); ++b)
    for_each_node(above_[b], [&](int a) { out.emplace_back(a, b); });
  std::sort(out.begin(), out.end());
  return out;
}

PartialOrder minimal_order(const Graph& g) {
  auto anc = is_ancestral(g);
  if (!anc.ok)
    throw PreconditionError("minimal_order: graph is not ancestral (" +
                            anc.text + ")");
  PartialOrder ord(g.node_count());
  for (int v = 0; v < g.node_count(); ++v)
    for_each_node(ancestors(g, v), [&](int a) { ord.add_greater(a, v); });
  return ord;
}

OrderCheck is_valid_order(const Graph& g, const PartialOrder& ord) {
  if (ord.size() != g.node_count())
    throw OrderError("order domain does not match the graph");
  for (const Edge& e : g.edges()) {
    if (e.mark == Mark::Arrow) {
      if (!ord.greater(e.tail, e.head))
        return {false, e,
                "arrow " + g.label(e.tail) + " -> " + g.label(e.head) +
                    " without " + g.label(e.tail) + " > " + g.label(e.head)};
    } else {
      if (ord.comparable(e.tail, e.head))
        return {false, e,
                "arc " + g.label(e.tail) + " <-> " + g.label(e.head) +
                    " with comparable endpoints"};
    }
  }
  return {true, std::nullopt, ""};
}

}  // namespace csl
