#include "doctest.h"

#include "csl/fixtures.hpp"
#include "csl/io.hpp"
#include "csl/random_gen.hpp"
#include "csl/separation.hpp"

using namespace csl;

TEST_SUITE("io") {

TEST_CASE("graph text round trip") {
  std::string text =
      "nodes: i k l j\n"
      "i -> k\n"
      "l -> k\n"
      "j -> l\n";
  Graph g = parse_graph(text);
  CHECK(g == chain4_graph());
  CHECK(serialize_graph(g) == text);

  std::string arcs =
      "nodes: 1 2 3 4\n"
      "1 <-> 2\n"
      "3 -> 1\n"
      "4 -> 2\n";
  CHECK(parse_graph(arcs) == latent4_graph());
  // canonical form orders edges by endpoint pair
  CHECK(serialize_graph(parse_graph(arcs)) ==
        "nodes: 1 2 3 4\n1 <-> 2\n3 -> 1\n4 -> 2\n");
}

TEST_CASE("graph parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("nodes: a b\na -> c\n") == 2);          // unknown node
  CHECK(line_of("nodes: a b\na -> b\nb -> a\n") == 3);  // duplicate pair
  CHECK(line_of("nodes: a b\na -> a\n") == 2);          // self loop
  CHECK(line_of("a -> b\n") == 1);                      // missing header
  CHECK(line_of("nodes: a b\na => b\n") == 2);          // bad edge token
  CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("comments and spacing are tolerated") {
  Graph g = parse_graph(
      "# causal graph\n\nnodes: a b   c\n  a -> b  # downstream\n\nb <-> c\n");
  CHECK(g.node_count() == 3);
  CHECK(g.has_arrow(0, 1));
  CHECK(g.has_arc(1, 2));
}

TEST_CASE("model text round trip") {
  std::string text =
      "nodes: 1 2 3 4\n"
      "{1} _||_ {4} | {3}\n"
      "{1} _||_ {4} | {2,3}\n"
      "{2} _||_ {3} | {4}\n";
  IndependenceModel j = parse_model(text);
  CHECK(j == diamond_model());
  CHECK(serialize_model(j) == text);

  // empty conditioning set
  IndependenceModel e =
      parse_model("nodes: a b\n{a} _||_ {b} | {}\n");
  CHECK(e.contains(bit(0), bit(1), 0));
}

TEST_CASE("explicit duals are accepted with a warning") {
  std::vector<std::string> warnings;
  IndependenceModel j = parse_model(
      "nodes: a b c\n{a} _||_ {b} | {c}\n{b} _||_ {a} | {c}\n", &warnings);
  CHECK(j.statement_count() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("line 3") != std::string::npos);
}

TEST_CASE("model parse errors") {
  CHECK_THROWS_AS(parse_model("nodes: a b\n{a} _||_ {a} | {}\n"), ParseError);
  CHECK_THROWS_AS(parse_model("nodes: a b\n{} _||_ {b} | {}\n"), ParseError);
  CHECK_THROWS_AS(parse_model("nodes: a b\n{a} {b} | {}\n"), ParseError);
  CHECK_THROWS_AS(parse_model("nodes: a b\n{a} _||_ {z} | {}\n"), ParseError);
}

TEST_CASE("scm json round trip") {
  for (const std::string& id : builtin_scm_ids()) {
    Scm s = *builtin_scm(id);
    std::string text = serialize_scm_json(s);
    Scm back = parse_scm_json(text);
    CHECK(serialize_scm_json(back) == text);
    CHECK(induced_model_scm(back) == induced_model_scm(s));
  }
}

TEST_CASE("scm json rejects bad documents") {
  CHECK_THROWS_AS(parse_scm_json("{"), ParseError);
  CHECK_THROWS_AS(parse_scm_json("{}"), ParseError);
  Scm s = mod2_scm(Rational(1, 2));
  std::string text = serialize_scm_json(s);
  auto broken = text;
  auto pos = broken.find("\"1/2\"");
  broken.replace(pos, 5, "\"1/0\"");
  CHECK_THROWS_AS(parse_scm_json(broken), ParseError);
}

TEST_CASE("serialization is canonical over random inputs") {
  Rng rng(701);
  for (int t = 0; t < 40; ++t) {
    Graph g = random_ancestral_graph(rng, 3 + t % 4, 0.5, 0.3);
    std::string text = serialize_graph(g);
    CHECK(serialize_graph(parse_graph(text)) == text);

    IndependenceModel j = perturbed_graph_model(rng, g, 2, 8);
    std::string mt = serialize_model(j);
    CHECK(serialize_model(parse_model(mt)) == mt);
    CHECK(parse_model(mt) == j);

    Scm s = random_scm(rng, g);
    std::string st = serialize_scm_json(s);
    CHECK(serialize_scm_json(parse_scm_json(st)) == st);
  }
}

TEST_CASE("file io") {
  std::string path = "/tmp/csl_io_test.graph";
  write_file(path, serialize_graph(chain4_graph()));
  CHECK(load_graph(path) == chain4_graph());
  CHECK_THROWS_AS(load_graph("/tmp/does_not_exist.graph"), Error);
}

}  // TEST_SUITE
