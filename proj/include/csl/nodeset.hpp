#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace csl {

/// Node subset as a bitmask over node indices 0..n-1. Graphs here stay far
/// below 32 nodes (models are capped at 12), so one word is plenty.
using NodeSet = std::uint32_t;

inline constexpr NodeSet bit(int v) { return NodeSet{1} << v; }
inline constexpr bool has(NodeSet s, int v) { return (s >> v) & 1u; }
inline constexpr NodeSet full_set(int n) {
  return n == 0 ? 0u : (NodeSet{1} << n) - 1u;
}
inline int set_size(NodeSet s) { return std::popcount(s); }
inline int first_node(NodeSet s) { return std::countr_zero(s); }

template <typename F>
void for_each_node(NodeSet s, F&& f) {
  while (s != 0) {
    int v = std::countr_zero(s);
    f(v);
    s &= s - 1;
  }
}

/// Visits every subset of `s`, including the empty set and `s` itself.
template <typename F>
void for_each_subset(NodeSet s, F&& f) {
  NodeSet sub = s;
  while (true) {
    f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
}

/// Same, in ascending numeric mask order (empty set first). Witness scans
/// use this so "first counterexample" is well defined.
template <typename F>
void for_each_subset_asc(NodeSet s, F&& f) {
  NodeSet sub = 0;
  while (true) {
    f(sub);
    sub = (sub - s) & s;
    if (sub == 0) break;
  }
}

std::vector<int> set_to_nodes(NodeSet s);

}  // namespace csl
