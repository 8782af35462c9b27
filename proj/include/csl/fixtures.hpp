#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/scm.hpp"

namespace csl {

/// Expected verdicts are tagged with their source so that a change in a
/// derivation can never silently rewrite an asserted claim.
enum class FlagSource { Asserted, Derived };

struct ExpectedFlag {
  std::string name;
  bool value = false;
  FlagSource source = FlagSource::Derived;
};

/// A bundled worked example: graphs, a model and/or an SCM, plus the
/// expected-verdict manifest the `paper` command diffs against.
struct Fixture {
  std::string id;
  std::string description;
  std::optional<Graph> g0;
  std::optional<Graph> g1;         // alternative graph, when the example has one
  std::optional<Graph> augmented;  // fig1 only
  std::optional<IndependenceModel> model;
  std::optional<Scm> scm;
  std::vector<ExpectedFlag> manifest;
};

const std::vector<std::string>& fixture_ids();
Fixture paper_fixture(const std::string& id);  // throws Error on unknown id

/// Flags actually computed for a fixture, keyed like the manifest.
std::vector<std::pair<std::string, bool>> evaluate_fixture(const Fixture& f);

struct FixtureDiff {
  std::string name;
  bool expected = false;
  bool actual = false;
  FlagSource source = FlagSource::Derived;
};

struct FixtureResult {
  Fixture fixture;
  std::vector<std::pair<std::string, bool>> actual;
  std::vector<FixtureDiff> diffs;  // empty on success
};

FixtureResult run_fixture(const std::string& id);

// Named builders shared by fixtures and tests.
Graph chain4_graph();                 // i -> k <- l <- j
Graph latent4_graph();                // 3 -> 1, 4 -> 2, 1 <-> 2
Graph diamond_dag();                  // 4 -> 3, 4 -> 2, 3 -> 1, 2 -> 1
Graph diamond_arc_graph();            // as above with 2 <-> 1 an arc
Graph orfaith_dag();                  // j -> l <- k, j -> m -> s <- k
Graph seven_cycle_dag();              // i -> l <- m <- t <- j <- k <- h, i -> h
Graph seven_cycle_dag_alt();          // same with h -> i instead of i -> h
IndependenceModel chain4_model();     // J(chain4) + <i,j|k>
IndependenceModel diamond_model();    // the three diamond statements
IndependenceModel orfaith_model();    // J(orfaith) + <j,k|s>
IndependenceModel seven_cycle_closure_model();

Scm mod2_scm(const Rational& p);      // X2 = e2, X1 = X2 xor e1
Scm xor3_scm();                       // X1 = X2 xor X3 xor e1
Scm maxdiamond_scm();                 // max-mechanism diamond SCM

/// Builtin SCM ids: "mod2@1/2", "mod2@1/3", "xor3", "maxdiamond".
std::optional<Scm> builtin_scm(const std::string& id);
const std::vector<std::string>& builtin_scm_ids();

}  // namespace csl
