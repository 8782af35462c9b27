#pragma once

#include <optional>
#include <set>
#include <string>

#include "csl/imodel.hpp"
#include "csl/partial_order.hpp"

namespace csl {

/// Properties 1-9 of independence models. 1-6 quantify over set-valued
/// triples; 7-9 over singleton-pair statements <i,j|C> only.
enum class PropertyId {
  Symmetry,
  Decomposition,
  WeakUnion,
  Contraction,
  Intersection,
  Composition,
  SingletonTransitivity,
  OrderedUpward,
  OrderedDownward,
};

const char* property_name(PropertyId p);

struct PropertyWitness {
  PropertyId property;
  NodeSet a = 0, b = 0, c = 0, d = 0;  // instantiation, property-specific
  int k = -1;                          // pivot node for properties 7-9
  std::string text;
};

struct PropertyVerdict {
  bool ok = false;
  std::optional<PropertyWitness> witness;
};

/// Checks one property over the whole universe. Ordered properties need the
/// order; the first counterexample in scan order is reported.
PropertyVerdict check_property(const IndependenceModel& j, PropertyId p,
                               const PartialOrder* ord = nullptr);

/// Least superset of j closed under the given rules. Only generative rules
/// are admitted: symmetry through composition, plus ordered upward-stability
/// (which needs ord). Singleton-transitivity and ordered downward-stability
/// have disjunctive or removal-shaped conclusions and are refused.
IndependenceModel closure(const IndependenceModel& j,
                          const std::set<PropertyId>& props,
                          const PartialOrder* ord = nullptr);

/// Symmetry, decomposition, weak union, contraction.
const std::set<PropertyId>& semigraphoid_rules();

}  // namespace csl
