#include "csl/separation.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <sstream>

namespace csl {

namespace {

void check_query(const Graph& g, const SeparationQuery& q) {
  NodeSet uni = g.all_nodes();
  if ((q.a & ~uni) || (q.b & ~uni) || (q.c & ~uni))
    throw GraphError("separation query mentions unknown nodes");
  if ((q.a & q.b) || (q.a & q.c) || (q.b & q.c))
    throw GraphError("separation query sets must be pairwise disjoint");
  if (q.a == 0 || q.b == 0)
    throw GraphError("separation query needs nonempty A and B");
}

// Inner node u with path edges (prev,u) and (u,next): blocked unless a
// collider inside c-or-ancestors-of-c, or a non-collider outside c.
bool inner_open(const Graph& g, int prev, int u, int next, NodeSet c,
                NodeSet c_anc) {
  bool collider = head_at(g, prev, u) && head_at(g, next, u);
  return collider ? has(c_anc, u) : !has(c, u);
}

// DFS for a connecting path from a into `targets`. A prefix whose fixed
// inner nodes are open can only stay open, so blocked prefixes are dropped.
bool find_connecting(const Graph& g, int a, NodeSet targets, NodeSet c,
                     NodeSet c_anc, std::vector<int>& path, NodeSet used) {
  int v = path.back();
  int prev = path.size() >= 2 ? path[path.size() - 2] : -1;
  NodeSet next = g.neighbors(v) & ~used;
  bool found = false;
  for_each_node(next, [&](int w) {
    if (found) return;
    if (prev >= 0 && !inner_open(g, prev, v, w, c, c_anc)) return;
    path.push_back(w);
    if (has(targets, w)) {
      found = true;
      return;
    }
    if (find_connecting(g, a, targets, c, c_anc, path, used | bit(w))) {
      found = true;
      return;
    }
    path.pop_back();
  });
  return found;
}

}  // namespace

bool is_connecting_path(const Graph& g, const std::vector<int>& path,
                        NodeSet c) {
  if (!is_path_of(g, path)) throw GraphError("not a path of the graph");
  NodeSet c_anc = c | ancestors_of_set(g, c);
  for (std::size_t t = 1; t + 1 < path.size(); ++t)
    if (!inner_open(g, path[t - 1], path[t], path[t + 1], c, c_anc))
      return false;
  return true;
}

std::optional<std::vector<int>> connecting_path(const Graph& g,
                                                const SeparationQuery& q) {
  check_query(g, q);
  NodeSet c_anc = q.c | ancestors_of_set(g, q.c);
  std::optional<std::vector<int>> out;
  for_each_node(q.a, [&](int a) {
    if (out) return;
    std::vector<int> path{a};
    if (find_connecting(g, a, q.b, q.c, c_anc, path, bit(a))) out = path;
  });
  return out;
}

bool m_separated(const Graph& g, const SeparationQuery& q) {
  return !connecting_path(g, q).has_value();
}

bool m_separated_ref(const Graph& g, const SeparationQuery& q) {
  check_query(g, q);
  bool connected = false;
  for_each_node(q.a, [&](int a) {
    for_each_node(q.b, [&](int b) {
      if (connected) return;
      for (const auto& p : all_simple_paths(g, a, b))
        if (is_connecting_path(g, p, q.c)) {
          connected = true;
          return;
        }
    });
  });
  return !connected;
}

namespace {

IndependenceModel induced_model_impl(const Graph& g, int bound, bool parallel,
                                     int jobs) {
  IndependenceModel out(g.labels(), bound);
  out.set_provenance("separation");
  const std::size_t space = out.space_size();
  std::vector<std::uint8_t> hit(space, 0);

  auto eval = [&](std::size_t idx) {
    auto t = out.unpack(idx);
    if (t.a == 0 || t.b == 0) return;
    if (t.a > t.b) return;  // symmetric slot filled from the (a,b) twin
    if (m_separated(g, {t.a, t.b, t.c})) hit[idx] = 1;
  };

  if (parallel) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(space); ++idx)
      eval(static_cast<std::size_t>(idx));
#else
    (void)jobs;
    for (std::size_t idx = 0; idx < space; ++idx) eval(idx);
#endif
  } else {
    for (std::size_t idx = 0; idx < space; ++idx) eval(idx);
  }

  for (std::size_t idx = 0; idx < space; ++idx)
    if (hit[idx]) {
      auto t = out.unpack(idx);
      out.insert(t.a, t.b, t.c);
    }
  return out;
}

}  // namespace

IndependenceModel induced_model(const Graph& g, int bound) {
  return induced_model_impl(g, bound, false, 0);
}

IndependenceModel induced_model_parallel(const Graph& g, int bound,
                                         int jobs) {
  return induced_model_impl(g, bound, true, jobs);
}

MaximalityVerdict is_maximal(const Graph& g) {
  int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      if (m_separated(g, {bit(i), bit(j), anc_pair(g, i, j)})) continue;
      bool separable = false;
      NodeSet rest = g.all_nodes() & ~bit(i) & ~bit(j);
      for_each_subset(rest, [&](NodeSet c) {
        if (!separable && m_separated(g, {bit(i), bit(j), c}))
          separable = true;
      });
      if (!separable)
        return {false,
                PairWitness{i, j,
                            "nonadjacent pair " + g.label(i) + ", " +
                                g.label(j) + " is inseparable"}};
    }
  return {true, std::nullopt};
}

LocalMarkovVerdict ordered_local_markov_holds(const IndependenceModel& j,
                                              const Graph& g,
                                              const PartialOrder& ord) {
  require_same_universe(j, g);
  if (ord.size() != g.node_count())
    throw OrderError("order domain does not match the graph");
  // Arrows must respect the order; arcs may or may not be comparable (the
  // local-to-global equivalence needs a total order, which cannot keep arc
  // endpoints incomparable).
  for (const Edge& e : g.edges())
    if (e.mark == Mark::Arrow && !ord.greater(e.tail, e.head))
      throw OrderError("ordered_local_markov_holds: arrow " +
                       g.label(e.tail) + " -> " + g.label(e.head) +
                       " contradicts the order");
  for (int i = 0; i < g.node_count(); ++i) {
    NodeSet pst = ord.above(i);
    LocalMarkovVerdict bad{true, std::nullopt};
    for_each_subset_asc(pst, [&](NodeSet s) {
      if (!bad.ok) return;
      NodeSet a = s | bit(i);
      if (!is_ancestral_set(g, a)) return;
      NodeSet mb = markov_blanket(g, i, a);
      NodeSet rest = a & ~mb & ~bit(i);
      if (!j.contains(bit(i), rest, mb)) {
        LocalMarkovWitness w;
        w.node = i;
        w.ancestral_set = a;
        w.blanket = mb;
        w.text = "node " + g.label(i) + ", ancestral set " +
                 j.describe_set(a) + ": statement " +
                 j.describe_triple(bit(i), rest, mb) + " missing";
        bad = {false, w};
      }
    });
    if (!bad.ok) return bad;
  }
  return {true, std::nullopt};
}

}  // namespace csl
