#include "doctest.h"

#include "csl/fixtures.hpp"
#include "csl/random_gen.hpp"
#include "csl/separation.hpp"

using namespace csl;

namespace {

NodeSet named(const Graph& g, std::initializer_list<const char*> labels) {
  NodeSet s = 0;
  for (const char* l : labels) s |= bit(g.node(l));
  return s;
}

std::vector<int> path_of(const Graph& g,
                         std::initializer_list<const char*> labels) {
  std::vector<int> p;
  for (const char* l : labels) p.push_back(g.node(l));
  return p;
}

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("connecting paths") {
  Graph g = chain4_graph();
  CHECK_FALSE(is_connecting_path(g, path_of(g, {"i", "k", "l"}), 0));
  CHECK(is_connecting_path(g, path_of(g, {"i", "k", "l"}), named(g, {"k"})));
  CHECK_FALSE(
      is_connecting_path(g, path_of(g, {"k", "l", "j"}), named(g, {"l"})));
  // collider opened through an ancestor of the conditioning set
  Graph desc(std::vector<std::string>{"a", "c", "b", "d"});
  desc.add_arrow(desc.node("a"), desc.node("c"));
  desc.add_arrow(desc.node("b"), desc.node("c"));
  desc.add_arrow(desc.node("c"), desc.node("d"));
  CHECK(is_connecting_path(desc, path_of(desc, {"a", "c", "b"}),
                           named(desc, {"d"})));
  CHECK_THROWS_AS(is_connecting_path(g, path_of(g, {"i", "l"}), 0),
                  GraphError);
}

TEST_CASE("m-separation examples") {
  Graph g = chain4_graph();
  CHECK(m_separated(g, {named(g, {"k"}), named(g, {"j"}), named(g, {"l"})}));
  CHECK_FALSE(
      m_separated(g, {named(g, {"i"}), named(g, {"l"}), named(g, {"k"})}));
  Graph two(std::vector<std::string>{"i", "j"});
  CHECK(m_separated(two, {bit(0), bit(1), 0}));
  CHECK_THROWS_AS(m_separated(g, {named(g, {"i"}), named(g, {"i"}), 0}),
                  GraphError);
}

TEST_CASE("m-separation is symmetric") {
  Rng rng(201);
  for (int t = 0; t < 200; ++t) {
    int n = 3 + t % 4;
    Graph g = random_ancestral_graph(rng, n, 0.5, 0.3);
    NodeSet a = 0, b = 0, c = 0;
    for (int v = 0; v < n; ++v) {
      switch (rng() % 4) {
        case 0: a |= bit(v); break;
        case 1: b |= bit(v); break;
        case 2: c |= bit(v); break;
        default: break;
      }
    }
    if (a == 0 || b == 0) continue;
    CHECK(m_separated(g, {a, b, c}) == m_separated(g, {b, a, c}));
  }
}

TEST_CASE("path semantics agree with walk-reachability semantics") {
  // Independent oracle: by the walk formulation of m-separation, a collider
  // occurrence must lie in C itself (a walk may detour through a descendant
  // into C and back, so no ancestor-opening appears), and a non-collider
  // occurrence must avoid C. BFS over (node, arrival mark) states.
  auto walk_connected = [](const Graph& g, const SeparationQuery& q) {
    std::vector<std::array<bool, 2>> seen(g.node_count(), {false, false});
    std::vector<std::pair<int, bool>> queue;
    bool found = false;
    auto arrive = [&](int w, bool head) {
      if (has(q.b, w)) {
        found = true;
        return;
      }
      if (!seen[w][head]) {
        seen[w][head] = true;
        queue.emplace_back(w, head);
      }
    };
    for_each_node(q.a, [&](int a) {
      for_each_node(g.neighbors(a), [&](int w) { arrive(w, head_at(g, a, w)); });
    });
    while (!queue.empty() && !found) {
      auto [v, in_head] = queue.back();
      queue.pop_back();
      for_each_node(g.neighbors(v), [&](int w) {
        bool out_head = head_at(g, w, v);  // mark at v on the leaving edge
        bool collider = in_head && out_head;
        if (collider ? !has(q.c, v) : has(q.c, v)) return;
        arrive(w, head_at(g, v, w));
      });
    }
    return found;
  };

  Rng rng(208);
  int queries = 0;
  for (int t = 0; t < 120; ++t) {
    int n = 3 + t % 5;
    Graph g = random_ancestral_graph(rng, n, 0.6, 0.35);
    for (int q = 0; q < 40; ++q) {
      NodeSet a = 0, b = 0, c = 0;
      for (int v = 0; v < n; ++v) {
        switch (rng() % 4) {
          case 0: a |= bit(v); break;
          case 1: b |= bit(v); break;
          case 2: c |= bit(v); break;
          default: break;
        }
      }
      if (a == 0 || b == 0) continue;
      CHECK(m_separated(g, {a, b, c}) == !walk_connected(g, {a, b, c}));
      ++queries;
    }
  }
  CHECK(queries > 2000);
}

TEST_CASE("pruned search agrees with plain path enumeration") {
  Rng rng(202);
  for (int t = 0; t < 120; ++t) {
    int n = 3 + t % 4;
    Graph g = random_ancestral_graph(rng, n, 0.55, 0.3);
    for (int q = 0; q < 30; ++q) {
      NodeSet a = 0, b = 0, c = 0;
      for (int v = 0; v < n; ++v) {
        switch (rng() % 4) {
          case 0: a |= bit(v); break;
          case 1: b |= bit(v); break;
          case 2: c |= bit(v); break;
          default: break;
        }
      }
      if (a == 0 || b == 0) continue;
      CHECK(m_separated(g, {a, b, c}) == m_separated_ref(g, {a, b, c}));
    }
  }
}

TEST_CASE("witness path is a connecting path") {
  Graph g = chain4_graph();
  auto w = connecting_path(
      g, {named(g, {"i"}), named(g, {"l"}), named(g, {"k"})});
  REQUIRE(w.has_value());
  CHECK(is_connecting_path(g, *w, named(g, {"k"})));
  CHECK(has(named(g, {"i"}), w->front()));
  CHECK(has(named(g, {"l"}), w->back()));
}

TEST_CASE("induced model") {
  Graph two(std::vector<std::string>{"a", "b"});
  IndependenceModel empty = induced_model(two);
  CHECK(empty.contains(bit(0), bit(1), 0));

  Graph g = chain4_graph();
  IndependenceModel j = induced_model(g);
  auto b = [&](const char* l) { return bit(g.node(l)); };
  CHECK(j.contains(b("i"), b("j"), 0));
  CHECK(j.contains(b("i"), b("j"), b("l")));
  CHECK(j.contains(b("k"), b("j"), b("l")));
  CHECK_FALSE(j.contains(b("i"), b("l"), b("k")));

  Graph complete(std::vector<std::string>{"a", "b", "c"});
  complete.add_arrow(0, 1);
  complete.add_arrow(0, 2);
  complete.add_arrow(1, 2);
  CHECK(induced_model(complete).statement_count() == 0);

  Graph nine = Graph::with_nodes(9);
  CHECK_THROWS_AS(induced_model(nine), BoundError);
}

TEST_CASE("parallel induced model is verdict-identical") {
  Rng rng(203);
  for (int t = 0; t < 12; ++t) {
    Graph g = random_ancestral_graph(rng, 4 + t % 3, 0.5, 0.3);
    CHECK(induced_model(g) == induced_model_parallel(g, 8, 0));
  }
}

TEST_CASE("maximality") {
  CHECK(is_maximal(diamond_dag()).ok);   // every DAG is maximal
  CHECK(is_maximal(chain4_graph()).ok);
  CHECK(is_maximal(diamond_arc_graph()).ok);

  // a 4-node ancestral graph with an inseparable nonadjacent pair
  Graph g = Graph::with_nodes(4);
  g.add_arc(0, 2);
  g.add_arrow(3, 0);
  g.add_arrow(2, 1);
  g.add_arc(1, 3);
  g.add_arc(2, 3);
  REQUIRE(is_ancestral(g).ok);
  auto v = is_maximal(g);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK_FALSE(g.adjacent(v.witness->i, v.witness->j));
  // the witness pair really has no separating set
  NodeSet rest = full_set(4) & ~bit(v.witness->i) & ~bit(v.witness->j);
  for_each_subset(rest, [&](NodeSet c) {
    CHECK_FALSE(m_separated_ref(g, {bit(v.witness->i), bit(v.witness->j), c}));
  });
}

TEST_CASE("maximality agrees with the exhaustive-separation oracle") {
  Rng rng(207);
  int nonmax = 0;
  for (int t = 0; t < 150; ++t) {
    Graph g = random_ancestral_graph(rng, 4, 0.55, 0.6);
    bool oracle = true;
    for (int i = 0; i < 4 && oracle; ++i)
      for (int j = i + 1; j < 4 && oracle; ++j) {
        if (g.adjacent(i, j)) continue;
        bool sep = false;
        for_each_subset(full_set(4) & ~bit(i) & ~bit(j), [&](NodeSet c) {
          if (!sep && m_separated_ref(g, {bit(i), bit(j), c})) sep = true;
        });
        if (!sep) oracle = false;
      }
    CHECK(is_maximal(g).ok == oracle);
    nonmax += !oracle;
  }
  CHECK(nonmax > 0);
}

TEST_CASE("ordered local markov property") {
  Graph g = chain4_graph();
  IndependenceModel j = induced_model(g);
  PartialOrder ord = minimal_order(g);
  CHECK(ordered_local_markov_holds(j, g, ord).ok);

  // dropping the required blanket statement breaks it at (k, V)
  IndependenceModel broken = j;
  broken.erase(bit(g.node("k")), bit(g.node("j")),
               named(g, {"i", "l"}));
  auto v = ordered_local_markov_holds(broken, g, ord);
  CHECK_FALSE(v.ok);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->node == g.node("k"));
  CHECK(v.witness->ancestral_set == full_set(4));

  // a full independence model satisfies every blanket statement
  IndependenceModel full(g.labels());
  for (std::size_t idx = 0; idx < full.space_size(); ++idx) {
    auto t = full.unpack(idx);
    if (t.a != 0 && t.b != 0) full.insert(t.a, t.b, t.c);
  }
  CHECK(ordered_local_markov_holds(full, g, ord).ok);

  PartialOrder backwards(4);
  backwards.add_greater(g.node("k"), g.node("i"));
  CHECK_THROWS_AS(ordered_local_markov_holds(j, g, backwards), OrderError);
}

TEST_CASE("local markov equals global markov under total orders") {
  Rng rng(204);
  int agree = 0;
  for (int t = 0; t < 80; ++t) {
    int n = 3 + t % 3;
    Graph source = random_ancestral_graph(rng, n, 0.4, 0.25);
    Graph target =
        (t % 3 == 0) ? source : random_ancestral_graph(rng, n, 0.4, 0.25);
    IndependenceModel j = induced_model(source);
    PartialOrder total = random_consistent_total_order(rng, target);
    bool local = ordered_local_markov_holds(j, target, total).ok;
    bool global = is_markovian(j, target).ok;
    CHECK(local == global);
    agree += (local == global);
  }
  CHECK(agree == 80);
}

TEST_CASE("global markov implies local markov for partial valid orders") {
  Rng rng(205);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + t % 3;
    Graph g = random_ancestral_graph(rng, n, 0.45, 0.3);
    IndependenceModel j = induced_model(g);  // Markovian to g by construction
    PartialOrder ord = random_valid_order(rng, g, 2);
    CHECK(ordered_local_markov_holds(j, g, ord).ok);
  }
}

TEST_CASE("projection preserves separation over retained nodes") {
  Rng rng(206);
  int checked = 0;
  for (int t = 0; t < 10; ++t) {
    int n = 4 + t % 2;
    Graph g = random_ancestral_graph(rng, n, 0.45, 0.3);
    for (NodeSet m = 1; m < full_set(n); ++m) {
      Graph pr(std::vector<std::string>{});
      try {
        pr = latent_projection(g, m);
      } catch (const RegimeError&) {
        continue;
      }
      NodeSet keep = full_set(n) & ~m;
      std::vector<int> remap(n, -1);
      int idx = 0;
      for_each_node(keep, [&](int v) { remap[v] = idx++; });
      int kn = set_size(keep);
      for (std::size_t code = 0; code < (std::size_t{1} << (2 * kn));
           ++code) {
        NodeSet a = 0, b = 0, c = 0, pa = 0, pb = 0, pc = 0;
        std::size_t rest = code;
        for_each_node(keep, [&](int v) {
          int d = rest & 3;
          rest >>= 2;
          if (d == 1) { a |= bit(v); pa |= bit(remap[v]); }
          if (d == 2) { b |= bit(v); pb |= bit(remap[v]); }
          if (d == 3) { c |= bit(v); pc |= bit(remap[v]); }
        });
        if (a == 0 || b == 0) continue;
        CHECK(m_separated(g, {a, b, c}) == m_separated(pr, {pa, pb, pc}));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

}  // TEST_SUITE
