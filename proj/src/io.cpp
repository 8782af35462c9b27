#include "csl/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace csl {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

// Non-comment lines with their 1-based numbers.
std::vector<std::pair<int, std::string>> content_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (!line.empty()) out.emplace_back(no, line);
  }
  return out;
}

std::vector<std::string> parse_nodes_header(
    const std::pair<int, std::string>& line) {
  auto toks = tokens(line.second);
  if (toks.empty() || toks[0] != "nodes:")
    throw ParseError("expected 'nodes: <label>...' header", line.first);
  std::vector<std::string> labels(toks.begin() + 1, toks.end());
  if (labels.empty()) throw ParseError("empty node list", line.first);
  for (const auto& l : labels)
    if (!valid_label(l))
      throw ParseError("bad node label '" + l + "'", line.first);
  return labels;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty graph file");
  Graph g(parse_nodes_header(lines[0]));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [no, line] = lines[i];
    auto toks = tokens(line);
    if (toks.size() != 3 || (toks[1] != "->" && toks[1] != "<->"))
      throw ParseError("expected '<node> -> <node>' or '<node> <-> <node>'",
                       no);
    auto a = g.try_node(toks[0]);
    auto b = g.try_node(toks[2]);
    if (!a) throw ParseError("unknown node '" + toks[0] + "'", no);
    if (!b) throw ParseError("unknown node '" + toks[2] + "'", no);
    try {
      if (toks[1] == "->")
        g.add_arrow(*a, *b);
      else
        g.add_arc(*a, *b);
    } catch (const GraphError& e) {
      throw ParseError(e.what(), no);
    }
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  os << "nodes:";
  for (const auto& l : g.labels()) os << ' ' << l;
  os << '\n';
  for (const Edge& e : g.edges()) {
    if (e.mark == Mark::Arrow)
      os << g.label(e.tail) << " -> " << g.label(e.head) << '\n';
    else
      os << g.label(e.tail) << " <-> " << g.label(e.head) << '\n';
  }
  return os.str();
}

namespace {

// "{a,b}" -> node set; empty braces allowed.
NodeSet parse_braced_set(const std::string& raw,
                         const std::vector<std::string>& labels, int line_no) {
  std::string s = strip(raw);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw ParseError("expected '{...}' node set, got '" + raw + "'", line_no);
  s = s.substr(1, s.size() - 2);
  NodeSet out = 0;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    item = strip(item);
    if (item.empty())
      throw ParseError("empty element in node set '" + raw + "'", line_no);
    auto it = std::find(labels.begin(), labels.end(), item);
    if (it == labels.end())
      throw ParseError("unknown node '" + item + "'", line_no);
    int v = static_cast<int>(it - labels.begin());
    if (has(out, v))
      throw ParseError("node '" + item + "' repeated in set", line_no);
    out |= bit(v);
  }
  return out;
}

}  // namespace

IndependenceModel parse_model(const std::string& text,
                              std::vector<std::string>* warnings, int bound) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty model file");
  auto labels = parse_nodes_header(lines[0]);
  IndependenceModel j(labels, bound);
  j.set_provenance("file");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [no, line] = lines[i];
    auto sep = line.find("_||_");
    auto bar = line.find('|', sep == std::string::npos ? 0 : sep + 4);
    if (sep == std::string::npos || bar == std::string::npos)
      throw ParseError("expected '{A} _||_ {B} | {C}'", no);
    NodeSet a = parse_braced_set(line.substr(0, sep), labels, no);
    NodeSet b = parse_braced_set(line.substr(sep + 4, bar - sep - 4), labels,
                                 no);
    NodeSet c = parse_braced_set(line.substr(bar + 1), labels, no);
    if (a == 0 || b == 0)
      throw ParseError("statement sides must be nonempty", no);
    if ((a & b) || (a & c) || (b & c))
      throw ParseError("statement sets must be pairwise disjoint", no);
    if (j.contains(a, b, c)) {
      if (warnings)
        warnings->push_back("line " + std::to_string(no) + ": statement " +
                            j.describe_triple(a, b, c) +
                            " duplicates an earlier one (or its dual)");
      continue;
    }
    j.insert(a, b, c);
  }
  return j;
}

std::string serialize_model(const IndependenceModel& j) {
  std::ostringstream os;
  os << "nodes:";
  for (const auto& l : j.labels()) os << ' ' << l;
  os << '\n';
  j.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
    if (a > b) return;  // emit one orientation; duals are implicit
    os << j.describe_triple(a, b, c) << '\n';
  });
  return os.str();
}

// --- SCM JSON -----------------------------------------------------------

namespace {

using nlohmann::ordered_json;

Rational parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0)
    throw ParseError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) { return q.get_str(); }

}  // namespace

Scm parse_scm_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
  try {
    Graph g = parse_graph(doc.at("graph").get<std::string>());
    int n = g.node_count();

    std::vector<std::vector<Value>> supports(n);
    for (auto& [label, vals] : doc.at("supports").items()) {
      int v = g.node(label);
      supports[v] = vals.get<std::vector<Value>>();
    }

    std::vector<NoiseBlock> blocks;
    for (const auto& jb : doc.at("noise_blocks")) {
      NoiseBlock b;
      for (const auto& l : jb.at("nodes"))
        b.nodes.push_back(g.node(l.get<std::string>()));
      for (const auto& jr : jb.at("table")) {
        BlockRow row;
        row.values = jr.at("values").get<ValueTuple>();
        row.prob = parse_rational(jr.at("prob").get<std::string>());
        b.rows.push_back(std::move(row));
      }
      blocks.push_back(std::move(b));
    }

    std::vector<std::vector<MechanismRow>> mechanisms(n);
    for (auto& [label, rows] : doc.at("mechanisms").items()) {
      int v = g.node(label);
      for (const auto& jr : rows) {
        MechanismRow row;
        row.parents = jr.at("parents").get<ValueTuple>();
        row.noise = jr.at("noise").get<Value>();
        row.out = jr.at("out").get<Value>();
        mechanisms[v].push_back(std::move(row));
      }
    }

    std::string name = doc.value("name", std::string{});
    return Scm(std::move(g), std::move(supports), std::move(blocks),
               std::move(mechanisms), std::move(name));
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("bad SCM document: ") + e.what());
  }
}

std::string serialize_scm_json(const Scm& s) {
  ordered_json doc;
  if (!s.name().empty()) doc["name"] = s.name();
  doc["graph"] = serialize_graph(s.graph());
  ordered_json supports = ordered_json::object();
  for (int v = 0; v < s.node_count(); ++v)
    supports[s.graph().label(v)] = s.support(v);
  doc["supports"] = std::move(supports);
  ordered_json blocks = ordered_json::array();
  for (const NoiseBlock& b : s.noise_blocks()) {
    ordered_json jb;
    ordered_json names = ordered_json::array();
    for (int v : b.nodes) names.push_back(s.graph().label(v));
    jb["nodes"] = std::move(names);
    ordered_json table = ordered_json::array();
    for (const BlockRow& r : b.rows) {
      ordered_json jr;
      jr["values"] = r.values;
      jr["prob"] = rational_str(r.prob);
      table.push_back(std::move(jr));
    }
    jb["table"] = std::move(table);
    blocks.push_back(std::move(jb));
  }
  doc["noise_blocks"] = std::move(blocks);
  ordered_json mechs = ordered_json::object();
  for (int v = 0; v < s.node_count(); ++v) {
    ordered_json rows = ordered_json::array();
    for (const MechanismRow& r : s.mechanism(v)) {
      ordered_json jr;
      jr["parents"] = r.parents;
      jr["noise"] = r.noise;
      jr["out"] = r.out;
      rows.push_back(std::move(jr));
    }
    mechs[s.graph().label(v)] = std::move(rows);
  }
  doc["mechanisms"] = std::move(mechs);
  return doc.dump(2) + "\n";
}

// --- files --------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

Graph load_graph(const std::string& path) {
  return parse_graph(read_file(path));
}

IndependenceModel load_model(const std::string& path,
                             std::vector<std::string>* warnings, int bound) {
  return parse_model(read_file(path), warnings, bound);
}

Scm load_scm(const std::string& path) {
  return parse_scm_json(read_file(path));
}

}  // namespace csl
