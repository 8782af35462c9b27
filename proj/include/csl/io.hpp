#pragma once

#include <iosfwd>
#include <string>

#include "csl/graph.hpp"
#include "csl/imodel.hpp"
#include "csl/scm.hpp"

namespace csl {

// Graph text format, one statement per line, '#' starts a comment:
//   nodes: a b c d
//   a -> b
//   a <-> b
// Parsing is strict: unknown nodes, duplicate edges and self loops raise
// ParseError with the line number.
Graph parse_graph(const std::string& text);
std::string serialize_graph(const Graph& g);

// Model text format:
//   nodes: 1 2 3 4
//   {1} _||_ {4} | {2,3}
// The symmetric dual of every statement is added on load; an explicitly
// duplicated dual is accepted with a warning pushed to `warnings`.
IndependenceModel parse_model(const std::string& text,
                              std::vector<std::string>* warnings = nullptr,
                              int bound = IndependenceModel::kDefaultBound);
std::string serialize_model(const IndependenceModel& j);

// SCM JSON format. Probabilities are exact rationals written "num/den".
Scm parse_scm_json(const std::string& text);
std::string serialize_scm_json(const Scm& s);

std::string read_file(const std::string& path);   // throws Error
void write_file(const std::string& path, const std::string& content);

Graph load_graph(const std::string& path);
IndependenceModel load_model(const std::string& path,
                             std::vector<std::string>* warnings = nullptr,
                             int bound = IndependenceModel::kDefaultBound);
Scm load_scm(const std::string& path);

}  // namespace csl
