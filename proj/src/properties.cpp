#include "csl/properties.hpp"

#include <sstream>

namespace csl {

const char* property_name(PropertyId p) {
  switch (p) {
    case PropertyId::Symmetry: return "symmetry";
    case PropertyId::Decomposition: return "decomposition";
    case PropertyId::WeakUnion: return "weak-union";
    case PropertyId::Contraction: return "contraction";
    case PropertyId::Intersection: return "intersection";
    case PropertyId::Composition: return "composition";
    case PropertyId::SingletonTransitivity: return "singleton-transitivity";
    case PropertyId::OrderedUpward: return "ordered-upward-stability";
    case PropertyId::OrderedDownward: return "ordered-downward-stability";
  }
  return "?";
}

namespace {

using Model = IndependenceModel;

PropertyVerdict fail(const Model& j, PropertyId p, NodeSet a, NodeSet b,
                     NodeSet c, NodeSet d, int k, const std::string& text) {
  PropertyWitness w;
  w.property = p;
  w.a = a;
  w.b = b;
  w.c = c;
  w.d = d;
  w.k = k;
  w.text = std::string(property_name(p)) + ": " + text;
  (void)j;
  return {false, w};
}

// Scans disjoint (A, C, B, D) with A, B, D nonempty; stops on first failure.
template <typename Check>
PropertyVerdict scan_splits(const Model& j, Check&& check) {
  NodeSet uni = j.universe();
  PropertyVerdict out{true, std::nullopt};
  for_each_subset_asc(uni, [&](NodeSet a) {
    if (!out.ok || a == 0) return;
    for_each_subset_asc(uni & ~a, [&](NodeSet c) {
      if (!out.ok) return;
      for_each_subset_asc(uni & ~a & ~c, [&](NodeSet b) {
        if (!out.ok || b == 0) return;
        for_each_subset_asc(uni & ~a & ~c & ~b, [&](NodeSet d) {
          if (!out.ok || d == 0) return;
          out = check(a, b, c, d);
        });
      });
    });
  });
  return out;
}

// Singleton-pair statements <i,j|C> with i < j, ascending C, ascending k.
template <typename Check>
PropertyVerdict scan_singletons(const Model& j, Check&& check) {
  NodeSet uni = j.universe();
  int n = j.node_count();
  PropertyVerdict out{true, std::nullopt};
  for (int i = 0; i < n && out.ok; ++i)
    for (int jj = i + 1; jj < n && out.ok; ++jj)
      for_each_subset_asc(uni & ~bit(i) & ~bit(jj), [&](NodeSet c) {
        if (!out.ok) return;
        if (!j.contains(bit(i), bit(jj), c)) return;
        for (int k = 0; k < n && out.ok; ++k) {
          if (k == i || k == jj) continue;
          out = check(i, jj, c, k);
        }
      });
  return out;
}

}  // namespace

PropertyVerdict check_property(const Model& j, PropertyId p,
                               const PartialOrder* ord) {
  bool needs_order =
      p == PropertyId::OrderedUpward || p == PropertyId::OrderedDownward;
  if (needs_order) {
    if (ord == nullptr)
      throw Error("ordered stability checks need a partial order");
    if (ord->size() != j.node_count())
      throw OrderError("order domain does not match the model universe");
  }

  switch (p) {
    case PropertyId::Symmetry: {
      PropertyVerdict out{true, std::nullopt};
      j.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
        if (out.ok && !j.contains(b, a, c))
          out = fail(j, p, a, b, c, 0, -1,
                     j.describe_triple(a, b, c) + " without its dual");
      });
      return out;
    }

    case PropertyId::Decomposition:
      return scan_splits(j, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d)
                                -> PropertyVerdict {
        if (j.contains(a, b | d, c) && !j.contains(a, b, c))
          return fail(j, p, a, b, c, d, -1,
                      j.describe_triple(a, b | d, c) + " holds but " +
                          j.describe_triple(a, b, c) + " fails");
        return {true, std::nullopt};
      });

    case PropertyId::WeakUnion:
      return scan_splits(j, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d)
                                -> PropertyVerdict {
        if (j.contains(a, b | d, c) && !j.contains(a, b, c | d))
          return fail(j, p, a, b, c, d, -1,
                      j.describe_triple(a, b | d, c) + " holds but " +
                          j.describe_triple(a, b, c | d) + " fails");
        return {true, std::nullopt};
      });

    case PropertyId::Contraction:
      return scan_splits(j, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d)
                                -> PropertyVerdict {
        if (j.contains(a, b, c | d) && j.contains(a, d, c) &&
            !j.contains(a, b | d, c))
          return fail(j, p, a, b, c, d, -1,
                      j.describe_triple(a, b, c | d) + " and " +
                          j.describe_triple(a, d, c) + " hold but " +
                          j.describe_triple(a, b | d, c) + " fails");
        return {true, std::nullopt};
      });

    case PropertyId::Intersection:
      return scan_splits(j, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d)
                                -> PropertyVerdict {
        if (j.contains(a, b, c | d) && j.contains(a, d, c | b) &&
            !j.contains(a, b | d, c))
          return fail(j, p, a, b, c, d, -1,
                      j.describe_triple(a, b, c | d) + " and " +
                          j.describe_triple(a, d, c | b) + " hold but " +
                          j.describe_triple(a, b | d, c) + " fails");
        return {true, std::nullopt};
      });

    case PropertyId::Composition:
      return scan_splits(j, [&](NodeSet a, NodeSet b, NodeSet c, NodeSet d)
                                -> PropertyVerdict {
        if (j.contains(a, b, c) && j.contains(a, d, c) &&
            !j.contains(a, b | d, c))
          return fail(j, p, a, b, c, d, -1,
                      j.describe_triple(a, b, c) + " and " +
                          j.describe_triple(a, d, c) + " hold but " +
                          j.describe_triple(a, b | d, c) + " fails");
        return {true, std::nullopt};
      });

    case PropertyId::SingletonTransitivity:
      return scan_singletons(j, [&](int i, int jj, NodeSet c,
                                    int k) -> PropertyVerdict {
        if (has(c, k)) return {true, std::nullopt};
        if (j.contains(bit(i), bit(jj), c | bit(k)) &&
            !j.contains(bit(i), bit(k), c) && !j.contains(bit(jj), bit(k), c))
          return fail(j, PropertyId::SingletonTransitivity, bit(i), bit(jj), c,
                      0, k,
                      j.describe_triple(bit(i), bit(jj), c) + " and " +
                          j.describe_triple(bit(i), bit(jj), c | bit(k)) +
                          " hold but neither " +
                          j.describe_triple(bit(i), bit(k), c) + " nor " +
                          j.describe_triple(bit(jj), bit(k), c) + " does");
        return {true, std::nullopt};
      });

    case PropertyId::OrderedUpward:
      return scan_singletons(j, [&](int i, int jj, NodeSet c,
                                    int k) -> PropertyVerdict {
        if (!ord->greater(k, i) && !ord->greater(k, jj))
          return {true, std::nullopt};
        if (!j.contains(bit(i), bit(jj), c | bit(k)))
          return fail(j, PropertyId::OrderedUpward, bit(i), bit(jj), c, 0, k,
                      j.describe_triple(bit(i), bit(jj), c) +
                          " holds but adding " + j.labels()[k] + " loses " +
                          j.describe_triple(bit(i), bit(jj), c | bit(k)));
        return {true, std::nullopt};
      });

    case PropertyId::OrderedDownward:
      return scan_singletons(j, [&](int i, int jj, NodeSet c,
                                    int k) -> PropertyVerdict {
        // k must not be above i, jj, or any other conditioning node.
        if (ord->greater(k, i) || ord->greater(k, jj))
          return {true, std::nullopt};
        bool above_cond = false;
        for_each_node(c & ~bit(k), [&](int l) {
          if (ord->greater(k, l)) above_cond = true;
        });
        if (above_cond) return {true, std::nullopt};
        if (!j.contains(bit(i), bit(jj), c & ~bit(k)))
          return fail(j, PropertyId::OrderedDownward, bit(i), bit(jj), c, 0, k,
                      j.describe_triple(bit(i), bit(jj), c) +
                          " holds but removing " + j.labels()[k] + " loses " +
                          j.describe_triple(bit(i), bit(jj), c & ~bit(k)));
        return {true, std::nullopt};
      });
  }
  throw Error("unknown property");
}

const std::set<PropertyId>& semigraphoid_rules() {
  static const std::set<PropertyId> rules{
      PropertyId::Symmetry, PropertyId::Decomposition, PropertyId::WeakUnion,
      PropertyId::Contraction};
  return rules;
}

IndependenceModel closure(const IndependenceModel& j,
                          const std::set<PropertyId>& props,
                          const PartialOrder* ord) {
  for (PropertyId p : props) {
    if (p == PropertyId::SingletonTransitivity ||
        p == PropertyId::OrderedDownward)
      throw Error(std::string("closure under ") + property_name(p) +
                  " is refused: its conclusion is not generative");
    if (p == PropertyId::OrderedUpward) {
      if (ord == nullptr) throw Error("closure under ordered upward-stability needs an order");
      if (ord->size() != j.node_count())
        throw OrderError("order domain does not match the model universe");
    }
  }

  IndependenceModel out = j;
  out.set_provenance("closure(" + j.provenance() + ")");
  NodeSet uni = out.universe();
  bool changed = true;
  while (changed) {
    changed = false;
    auto add = [&](NodeSet a, NodeSet b, NodeSet c) {
      if (b == 0 || out.contains(a, b, c)) return;
      out.insert(a, b, c);
      changed = true;
    };
    for (PropertyId p : props) {
      switch (p) {
        case PropertyId::Symmetry:
          break;  // storage invariant
        case PropertyId::Decomposition:
        case PropertyId::WeakUnion:
          out.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
            if (set_size(b) < 2) return;
            for_each_subset(b, [&](NodeSet d) {
              if (d == 0 || d == b) return;
              if (p == PropertyId::Decomposition)
                add(a, b & ~d, c);
              else
                add(a, b & ~d, c | d);
            });
          });
          break;
        case PropertyId::Contraction:
          out.for_each_statement([&](NodeSet a, NodeSet b, NodeSet cd) {
            for_each_subset(cd, [&](NodeSet d) {
              if (d == 0) return;
              NodeSet c = cd & ~d;
              if (out.contains(a, d, c)) add(a, b | d, c);
            });
          });
          break;
        case PropertyId::Intersection:
          out.for_each_statement([&](NodeSet a, NodeSet b, NodeSet cd) {
            for_each_subset(cd, [&](NodeSet d) {
              if (d == 0) return;
              NodeSet c = cd & ~d;
              if (out.contains(a, d, c | b)) add(a, b | d, c);
            });
          });
          break;
        case PropertyId::Composition:
          out.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
            for_each_subset(uni & ~a & ~b & ~c, [&](NodeSet d) {
              if (d == 0) return;
              if (out.contains(a, d, c)) add(a, b | d, c);
            });
          });
          break;
        case PropertyId::OrderedUpward:
          out.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
            if (set_size(a) != 1 || set_size(b) != 1) return;
            int i = first_node(a), jj = first_node(b);
            for (int k = 0; k < out.node_count(); ++k) {
              if (k == i || k == jj || has(c, k)) continue;
              if (ord->greater(k, i) || ord->greater(k, jj))
                add(a, b, c | bit(k));
            }
          });
          break;
        default:
          break;
      }
    }
  }
  return out;
}

}  // namespace csl
