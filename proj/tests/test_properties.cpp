#include "doctest.h"

#include "csl/fixtures.hpp"
#include "csl/properties.hpp"
#include "csl/random_gen.hpp"
#include "csl/scm.hpp"
#include "csl/separation.hpp"

using namespace csl;

TEST_SUITE("properties") {

TEST_CASE("singleton transitivity failure carries the first witness") {
  Graph g = chain4_graph();
  IndependenceModel j = chain4_model();
  auto v = check_property(j, PropertyId::SingletonTransitivity);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->a == bit(g.node("i")));
  CHECK(v.witness->b == bit(g.node("j")));
  CHECK(v.witness->c == 0);
  CHECK(v.witness->k == g.node("k"));
}

TEST_CASE("ordered stabilities of the chain model") {
  Graph g = chain4_graph();
  IndependenceModel j = chain4_model();
  PartialOrder ord = minimal_order(g);
  CHECK(check_property(j, PropertyId::OrderedUpward, &ord).ok);
  CHECK(check_property(j, PropertyId::OrderedDownward, &ord).ok);
  CHECK_THROWS_AS(check_property(j, PropertyId::OrderedUpward), Error);
}

TEST_CASE("xor model fails composition") {
  Scm s = xor3_scm();
  IndependenceModel j = induced_model_scm(s);
  auto v = check_property(j, PropertyId::Composition);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  const Graph& g = s.graph();
  CHECK(v.witness->a == bit(g.node("1")));
  CHECK((v.witness->b | v.witness->d) ==
        (bit(g.node("2")) | bit(g.node("3"))));
  CHECK(v.witness->c == 0);
}

TEST_CASE("each set-valued property catches a targeted violation") {
  auto fresh = [] {
    return IndependenceModel(std::vector<std::string>{"a", "b", "c", "d"});
  };
  NodeSet a = bit(0), b = bit(1), c = bit(2), d = bit(3);

  IndependenceModel j1 = fresh();
  j1.insert(a, b | c, 0);
  CHECK_FALSE(check_property(j1, PropertyId::Decomposition).ok);
  CHECK_FALSE(check_property(j1, PropertyId::WeakUnion).ok);
  j1.insert(a, b, 0);
  j1.insert(a, c, 0);
  j1.insert(a, b, c);
  j1.insert(a, c, b);
  CHECK(check_property(j1, PropertyId::Decomposition).ok);
  CHECK(check_property(j1, PropertyId::WeakUnion).ok);

  IndependenceModel j2 = fresh();
  j2.insert(a, b, c);
  j2.insert(a, c, 0);
  CHECK_FALSE(check_property(j2, PropertyId::Contraction).ok);

  IndependenceModel j3 = fresh();
  j3.insert(a, b, c);
  j3.insert(a, c, b);
  CHECK_FALSE(check_property(j3, PropertyId::Intersection).ok);

  IndependenceModel j4 = fresh();
  j4.insert(a, b, 0);
  j4.insert(a, c, 0);
  CHECK_FALSE(check_property(j4, PropertyId::Composition).ok);
  j4.insert(a, b | c, 0);
  j4.insert(a, b, c);
  j4.insert(a, c, b);
  CHECK(check_property(j4, PropertyId::Composition).ok);
  CHECK(check_property(j4, PropertyId::Symmetry).ok);
  CHECK(check_property(j4, PropertyId::Decomposition).ok);
  // d stayed out of every statement
  CHECK(check_property(j4, PropertyId::SingletonTransitivity).ok);
  (void)d;
}

TEST_CASE("separation models satisfy all nine properties") {
  Rng rng(401);
  for (int t = 0; t < 50; ++t) {
    Graph g = random_ancestral_graph(rng, 3 + t % 4, 0.45, 0.3);
    IndependenceModel j = induced_model(g);
    PartialOrder ord = minimal_order(g);
    for (PropertyId p :
         {PropertyId::Symmetry, PropertyId::Decomposition,
          PropertyId::WeakUnion, PropertyId::Contraction,
          PropertyId::Intersection, PropertyId::Composition,
          PropertyId::SingletonTransitivity}) {
      auto v = check_property(j, p);
      CHECK_MESSAGE(v.ok, property_name(p));
    }
    CHECK(check_property(j, PropertyId::OrderedUpward, &ord).ok);
    CHECK(check_property(j, PropertyId::OrderedDownward, &ord).ok);
  }
}

TEST_CASE("witness instantiations re-evaluate to the reported violation") {
  Rng rng(402);
  for (int t = 0; t < 40; ++t) {
    Graph g = random_ancestral_graph(rng, 4, 0.5, 0.3);
    IndependenceModel j = perturbed_graph_model(rng, g, 2, 8);
    for (PropertyId p :
         {PropertyId::Decomposition, PropertyId::WeakUnion,
          PropertyId::Contraction, PropertyId::Intersection,
          PropertyId::Composition}) {
      auto v = check_property(j, p);
      if (v.ok) continue;
      const auto& w = *v.witness;
      switch (p) {
        case PropertyId::Decomposition:
          CHECK(j.contains(w.a, w.b | w.d, w.c));
          CHECK_FALSE(j.contains(w.a, w.b, w.c));
          break;
        case PropertyId::WeakUnion:
          CHECK(j.contains(w.a, w.b | w.d, w.c));
          CHECK_FALSE(j.contains(w.a, w.b, w.c | w.d));
          break;
        case PropertyId::Contraction:
          CHECK(j.contains(w.a, w.b, w.c | w.d));
          CHECK(j.contains(w.a, w.d, w.c));
          CHECK_FALSE(j.contains(w.a, w.b | w.d, w.c));
          break;
        case PropertyId::Intersection:
          CHECK(j.contains(w.a, w.b, w.c | w.d));
          CHECK(j.contains(w.a, w.d, w.c | w.b));
          CHECK_FALSE(j.contains(w.a, w.b | w.d, w.c));
          break;
        case PropertyId::Composition:
          CHECK(j.contains(w.a, w.b, w.c));
          CHECK(j.contains(w.a, w.d, w.c));
          CHECK_FALSE(j.contains(w.a, w.b | w.d, w.c));
          break;
        default:
          break;
      }
    }
  }
}

TEST_CASE("closure basics") {
  // empty model stays empty
  IndependenceModel empty(std::vector<std::string>{"a", "b", "c"});
  CHECK(closure(empty, semigraphoid_rules()).statement_count() == 0);

  // one upward application
  IndependenceModel j(std::vector<std::string>{"a", "b", "c"});
  j.insert(bit(0), bit(1), 0);
  PartialOrder ord(3);
  ord.add_greater(2, 0);  // c > a
  std::set<PropertyId> up{PropertyId::OrderedUpward};
  IndependenceModel cl = closure(j, up, &ord);
  CHECK(cl.contains(bit(0), bit(1), bit(2)));
  CHECK(cl.statement_count() == 4);

  // refused rules
  CHECK_THROWS_AS(closure(j, {PropertyId::SingletonTransitivity}), Error);
  CHECK_THROWS_AS(closure(j, {PropertyId::OrderedDownward}), Error);
  CHECK_THROWS_AS(closure(j, up), Error);  // missing order
}

TEST_CASE("closure is extensive and idempotent") {
  Rng rng(403);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_ancestral_graph(rng, 4 + t % 2, 0.45, 0.25);
    IndependenceModel j = perturbed_graph_model(rng, g, 2, 8);
    std::set<PropertyId> rules = semigraphoid_rules();
    rules.insert(PropertyId::OrderedUpward);
    PartialOrder ord = minimal_order(g);
    IndependenceModel cl = closure(j, rules, &ord);
    CHECK(j.is_subset_of(cl));
    CHECK(closure(cl, rules, &ord) == cl);
  }
}

TEST_CASE("the seven-node closure reproduces the worked example") {
  Graph g0 = seven_cycle_dag();
  Graph g1 = seven_cycle_dag_alt();
  IndependenceModel j = seven_cycle_closure_model();
  auto b = [&](const char* l) { return bit(g1.node(l)); };
  CHECK(j.contains(b("k"), b("m"), b("l")));
  CHECK(j.contains(b("k"), b("m"), b("l") | b("h")));  // upward via h > k
  CHECK_FALSE(j.contains(b("k"), b("m"), b("i") | b("l")));
  PartialOrder o0 = minimal_order(g0), o1 = minimal_order(g1);
  CHECK(check_property(j, PropertyId::OrderedUpward, &o1).ok);
  auto v = check_property(j, PropertyId::OrderedUpward, &o0);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK((v.witness->a | v.witness->b) == (b("k") | b("m")));
  CHECK(v.witness->c == b("l"));
  CHECK(v.witness->k == g1.node("i"));
}

}  // TEST_SUITE
