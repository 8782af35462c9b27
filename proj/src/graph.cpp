#include "csl/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace csl {

std::vector<int> set_to_nodes(NodeSet s) {
  std::vector<int> out;
  for_each_node(s, [&](int v) { out.push_back(v); });
  return out;
}

Graph::Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw GraphError("empty node label");
    if (!seen.insert(l).second)
      throw GraphError("duplicate node label '" + l + "'");
  }
  if (labels_.size() > 31) throw GraphError("too many nodes (max 31)");
  int n = node_count();
  parents_.assign(n, 0);
  children_.assign(n, 0);
  spouses_.assign(n, 0);
  adj_.assign(n, 0);
}

Graph Graph::with_nodes(int n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return Graph(std::move(labels));
}

int Graph::node(std::string_view label) const {
  auto v = try_node(label);
  if (!v) throw GraphError("unknown node '" + std::string(label) + "'");
  return *v;
}

std::optional<int> Graph::try_node(std::string_view label) const {
  for (int i = 0; i < node_count(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

void Graph::check_new_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
    throw GraphError("edge endpoint out of range");
  if (a == b) throw GraphError("self loop at '" + labels_[a] + "'");
  if (adjacent(a, b))
    throw GraphError("duplicate edge between '" + labels_[a] + "' and '" +
                     labels_[b] + "'");
}

void Graph::add_arrow(int tail, int head) {
  check_new_edge(tail, head);
  children_[tail] |= bit(head);
  parents_[head] |= bit(tail);
  adj_[tail] |= bit(head);
  adj_[head] |= bit(tail);
  ++edge_count_;
}

void Graph::add_arc(int a, int b) {
  check_new_edge(a, b);
  spouses_[a] |= bit(b);
  spouses_[b] |= bit(a);
  adj_[a] |= bit(b);
  adj_[b] |= bit(a);
  ++edge_count_;
}

std::optional<Edge> Graph::edge_between(int a, int b) const {
  if (!adjacent(a, b)) return std::nullopt;
  if (has_arc(a, b)) return Edge{std::min(a, b), std::max(a, b), Mark::Arc};
  if (has_arrow(a, b)) return Edge{a, b, Mark::Arrow};
  return Edge{b, a, Mark::Arrow};
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int a = 0; a < node_count(); ++a)
    for (int b = a + 1; b < node_count(); ++b)
      if (auto e = edge_between(a, b)) out.push_back(*e);
  return out;
}

std::string Graph::describe_nodes(NodeSet s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each_node(s, [&](int v) {
    if (!first) os << ',';
    os << labels_[v];
    first = false;
  });
  os << '}';
  return os.str();
}

bool operator==(const Graph& a, const Graph& b) {
  return a.labels_ == b.labels_ && a.parents_ == b.parents_ &&
         a.spouses_ == b.spouses_;
}

Skeleton::Skeleton(std::vector<std::string> labels)
    : labels_(std::move(labels)), adj_(labels_.size(), 0) {}

void Skeleton::add_edge(int a, int b) {
  if (a == b) throw GraphError("self loop in skeleton");
  if (adjacent(a, b)) throw GraphError("duplicate skeleton edge");
  adj_[a] |= bit(b);
  adj_[b] |= bit(a);
  ++edge_count_;
}

std::vector<std::pair<int, int>> Skeleton::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < node_count(); ++a)
    for (int b = a + 1; b < node_count(); ++b)
      if (adjacent(a, b)) out.emplace_back(a, b);
  return out;
}

// --- ancestry ---------------------------------------------------------

NodeSet ancestors(const Graph& g, int i) {
  if (i < 0 || i >= g.node_count()) throw GraphError("unknown node index");
  NodeSet an = 0;
  NodeSet frontier = g.parents(i);
  while (frontier != 0) {
    an |= frontier;
    NodeSet next = 0;
    for_each_node(frontier, [&](int v) { next |= g.parents(v); });
    frontier = next & ~an;
  }
  return an;  // i itself only included when it lies on a directed cycle
}

NodeSet ancestors_of_set(const Graph& g, NodeSet s) {
  NodeSet an = 0;
  for_each_node(s, [&](int v) { an |= ancestors(g, v); });
  return an;
}

NodeSet anc_pair(const Graph& g, int i, int j) {
  if (i == j) throw GraphError("anc_pair needs two distinct nodes");
  return (ancestors(g, i) | ancestors(g, j)) & ~(bit(i) | bit(j));
}

bool is_ancestral_set(const Graph& g, NodeSet a) {
  return (ancestors_of_set(g, a) | a) == a;
}

AncestralVerdict is_ancestral(const Graph& g) {
  // Directed cycle search over arrow edges.
  int n = g.node_count();
  std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
  for (int root = 0; root < n; ++root) {
    if (state[root] != 0) continue;
    std::vector<std::pair<int, NodeSet>> dfs{{root, g.children(root)}};
    state[root] = 1;
    while (!dfs.empty()) {
      auto& [v, rest] = dfs.back();
      if (rest == 0) {
        state[v] = 2;
        dfs.pop_back();
        continue;
      }
      int w = first_node(rest);
      rest &= rest - 1;
      if (state[w] == 1) {
        // recover the cycle from the dfs stack
        std::vector<int> cycle;
        bool in_cycle = false;
        for (auto& [u, _] : dfs) {
          if (u == w) in_cycle = true;
          if (in_cycle) cycle.push_back(u);
        }
        std::ostringstream os;
        os << "directed cycle";
        for (int u : cycle) os << ' ' << g.label(u);
        return {false, cycle, std::nullopt, os.str()};
      }
      if (state[w] == 0) {
        state[w] = 1;
        dfs.emplace_back(w, g.children(w));
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    NodeSet an = ancestors(g, a);
    NodeSet bad = g.spouses(a) & an;
    if (bad != 0) {
      int b = first_node(bad);
      Edge arc{std::min(a, b), std::max(a, b), Mark::Arc};
      return {false,
              {},
              arc,
              "arc " + g.label(arc.tail) + " <-> " + g.label(arc.head) +
                  " with " + g.label(b) + " an ancestor of " + g.label(a)};
    }
  }
  return {true, {}, std::nullopt, ""};
}

bool is_dag(const Graph& g) {
  for (int v = 0; v < g.node_count(); ++v)
    if (g.spouses(v) != 0) return false;
  return is_ancestral(g).ok;
}

// --- local structure --------------------------------------------------

bool head_at(const Graph& g, int u, int v) {
  if (!g.adjacent(u, v)) throw GraphError("head_at: missing edge");
  return g.has_arc(u, v) || g.has_arrow(u, v);
}

TripathKind classify_tripath(const Graph& g, int a, int t, int b) {
  if (!g.adjacent(a, t) || !g.adjacent(t, b))
    throw GraphError("classify_tripath: missing edge");
  return (head_at(g, a, t) && head_at(g, b, t)) ? TripathKind::Collider
                                                : TripathKind::NonCollider;
}

Skeleton skeleton(const Graph& g) {
  Skeleton sk(g.labels());
  for (const Edge& e : g.edges()) sk.add_edge(e.tail, e.head);
  return sk;
}

std::vector<std::array<int, 3>> collider_v_configurations(const Graph& g) {
  std::vector<std::array<int, 3>> out;
  int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      NodeSet mid = g.neighbors(i) & g.neighbors(j);
      for_each_node(mid, [&](int t) {
        if (classify_tripath(g, i, t, j) == TripathKind::Collider)
          out.push_back({i, t, j});
      });
    }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// All simple paths a..b, with a visitor; prefix carries the current path.
void dfs_paths(const Graph& g, int b, std::vector<int>& prefix, NodeSet used,
               const std::function<void(const std::vector<int>&)>& visit) {
  int v = prefix.back();
  if (v == b) {
    if (prefix.size() >= 2) visit(prefix);
    return;
  }
  NodeSet next = g.neighbors(v) & ~used;
  for_each_node(next, [&](int w) {
    prefix.push_back(w);
    dfs_paths(g, b, prefix, used | bit(w), visit);
    prefix.pop_back();
  });
}

}  // namespace

std::vector<std::vector<int>> all_simple_paths(const Graph& g, int a, int b) {
  if (a == b) throw GraphError("paths need distinct endpoints");
  std::vector<std::vector<int>> out;
  std::vector<int> prefix{a};
  dfs_paths(g, b, prefix, bit(a),
            [&](const std::vector<int>& p) { out.push_back(p); });
  return out;
}

bool is_path_of(const Graph& g, const std::vector<int>& nodes) {
  if (nodes.size() < 2) return false;
  NodeSet seen = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    int v = nodes[i];
    if (v < 0 || v >= g.node_count() || has(seen, v)) return false;
    seen |= bit(v);
    if (i > 0 && !g.adjacent(nodes[i - 1], v)) return false;
  }
  return true;
}

std::string describe_path(const Graph& g, const std::vector<int>& nodes) {
  std::ostringstream os;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    os << g.label(nodes[i]);
    if (i + 1 < nodes.size()) {
      int u = nodes[i], v = nodes[i + 1];
      if (g.has_arc(u, v))
        os << " <-> ";
      else if (g.has_arrow(u, v))
        os << " -> ";
      else
        os << " <- ";
    }
  }
  return os.str();
}

std::vector<std::vector<int>> minimal_collider_paths(const Graph& g) {
  auto anc = is_ancestral(g);
  if (!anc.ok)
    throw PreconditionError("minimal_collider_paths: graph is not ancestral (" +
                            anc.text + ")");
  std::vector<std::vector<int>> out;
  int n = g.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      std::vector<std::pair<std::vector<int>, NodeSet>> collider_paths;
      std::vector<int> prefix{i};
      dfs_paths(g, j, prefix, bit(i), [&](const std::vector<int>& p) {
        for (std::size_t t = 1; t + 1 < p.size(); ++t)
          if (classify_tripath(g, p[t - 1], p[t], p[t + 1]) !=
              TripathKind::Collider)
            return;
        NodeSet inner = 0;
        for (std::size_t t = 1; t + 1 < p.size(); ++t) inner |= bit(p[t]);
        collider_paths.emplace_back(p, inner);
      });
      for (const auto& [path, inner] : collider_paths) {
        bool minimal = true;
        for (const auto& [other, oinner] : collider_paths) {
          if (oinner != inner && (oinner & inner) == oinner) {
            minimal = false;  // strictly smaller inner set exists
            break;
          }
        }
        if (minimal) out.push_back(path);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

NodeSet district(const Graph& g, int i) {
  if (i < 0 || i >= g.node_count()) throw GraphError("unknown node index");
  NodeSet dis = bit(i);
  NodeSet frontier = dis;
  while (frontier != 0) {
    NodeSet next = 0;
    for_each_node(frontier, [&](int v) { next |= g.spouses(v); });
    frontier = next & ~dis;
    dis |= next;
  }
  return dis;
}

NodeSet markov_blanket(const Graph& g, int i, NodeSet a) {
  if (!has(a, i)) throw PreconditionError("markov_blanket: i not in A");
  if (!is_ancestral_set(g, a))
    throw PreconditionError("markov_blanket: A is not ancestral");
  if ((g.children(i) & a) != 0)
    throw PreconditionError("markov_blanket: i has children inside A");
  // district of i in the induced subgraph G[A]
  NodeSet dis = bit(i);
  NodeSet frontier = dis;
  while (frontier != 0) {
    NodeSet next = 0;
    for_each_node(frontier, [&](int v) { next |= g.spouses(v) & a; });
    frontier = next & ~dis;
    dis |= next;
  }
  NodeSet pa = 0;
  for_each_node(dis, [&](int v) { pa |= g.parents(v) & a; });
  return (pa | dis) & ~bit(i);
}

// --- graph surgery ----------------------------------------------------

Graph latent_projection(const Graph& g, NodeSet m) {
  if ((m & ~g.all_nodes()) != 0)
    throw GraphError("latent_projection: m is not a subset of the nodes");
  NodeSet retained = g.all_nodes() & ~m;

  // Candidate marks per retained pair: (head at lower, head at upper).
  std::map<std::pair<int, int>, std::set<std::pair<bool, bool>>> cand;
  auto consider = [&](const std::vector<int>& p) {
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      if (!has(m, p[t])) return;
      if (classify_tripath(g, p[t - 1], p[t], p[t + 1]) ==
          TripathKind::Collider)
        return;
    }
    int a = p.front(), b = p.back();
    bool ha = head_at(g, p[1], a);
    bool hb = head_at(g, p[p.size() - 2], b);
    if (a > b) {
      std::swap(a, b);
      std::swap(ha, hb);
    }
    cand[{a, b}].insert({ha, hb});
  };
  // Generated edges join retained nodes only, so they can never sit inside a
  // later qualifying path (whose inner nodes lie in m); one pass over the
  // original graph reaches the fixed point.
  for_each_node(retained, [&](int a) {
    for_each_node(retained, [&](int b) {
      if (a >= b) return;
      std::vector<int> prefix{a};
      dfs_paths(g, b, prefix, bit(a), consider);
    });
  });

  std::vector<std::string> labels;
  std::vector<int> remap(g.node_count(), -1);
  for_each_node(retained, [&](int v) {
    remap[v] = static_cast<int>(labels.size());
    labels.push_back(g.label(v));
  });
  Graph out(std::move(labels));
  for (const auto& [pair, forms] : cand) {
    if (forms.size() > 1)
      throw RegimeError(
          "latent_projection: conflicting edge marks generated between '" +
          g.label(pair.first) + "' and '" + g.label(pair.second) + "'");
    auto [ha, hb] = *forms.begin();
    int a = remap[pair.first], b = remap[pair.second];
    if (ha && hb)
      out.add_arc(a, b);
    else if (hb)
      out.add_arrow(a, b);
    else if (ha)
      out.add_arrow(b, a);
    else
      throw RegimeError("latent_projection: generated edge with two tails");
  }
  return out;
}

Graph augment(const Graph& g) {
  auto anc = is_ancestral(g);
  if (!anc.ok)
    throw PreconditionError("augment: graph is not ancestral (" + anc.text +
                            ")");
  int n = g.node_count();
  std::vector<std::string> labels = g.labels();
  for (int i = 0; i < n; ++i) {
    std::string el = "e_" + g.label(i);
    if (g.try_node(el))
      throw GraphError("augment: label collision with '" + el + "'");
    labels.push_back(el);
  }
  Graph out(std::move(labels));
  for (const Edge& e : g.edges()) {
    if (e.mark == Mark::Arrow)
      out.add_arrow(e.tail, e.head);
    else
      out.add_arc(n + e.tail, n + e.head);
  }
  for (int i = 0; i < n; ++i) out.add_arrow(n + i, i);
  return out;
}

}  // namespace csl
