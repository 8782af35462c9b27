#include "csl/random_gen.hpp"

#include <algorithm>
#include <numeric>

#include "csl/separation.hpp"

namespace csl {

namespace {

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

Graph random_ancestral_graph(Rng& rng, int n, double edge_prob,
                             double arc_fraction) {
  Graph g = Graph::with_nodes(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::pair<int, int>> arc_wanted;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (uniform01(rng) >= edge_prob) continue;
      if (uniform01(rng) < arc_fraction)
        arc_wanted.emplace_back(order[i], order[j]);
      else
        g.add_arrow(order[i], order[j]);  // earlier in order = ancestor side
    }
  for (auto [u, v] : arc_wanted) {
    // arcs only between directionally unrelated nodes; otherwise keep the
    // sampled adjacency as an arrow along the topological order
    if (has(ancestors(g, v), u) || has(ancestors(g, u), v))
      g.add_arrow(u, v);
    else
      g.add_arc(u, v);
  }
  return g;
}

Graph random_dag(Rng& rng, int n, double edge_prob) {
  return random_ancestral_graph(rng, n, edge_prob, 0.0);
}

Graph random_maximal_ancestral_graph(Rng& rng, int n, double edge_prob,
                                     double arc_fraction) {
  for (int tries = 0; tries < 200; ++tries) {
    Graph g = random_ancestral_graph(rng, n, edge_prob, arc_fraction);
    if (is_maximal(g).ok) return g;
  }
  return random_dag(rng, n, edge_prob);  // DAGs are always maximal
}

PartialOrder random_valid_order(Rng& rng, const Graph& g, int extra_pairs) {
  PartialOrder ord = minimal_order(g);
  int n = g.node_count();
  for (int t = 0; t < extra_pairs; ++t) {
    int a = uniform_int(rng, 0, n - 1);
    int b = uniform_int(rng, 0, n - 1);
    if (a == b || ord.comparable(a, b) || g.has_arc(a, b)) continue;
    PartialOrder trial = ord;
    try {
      trial.add_greater(a, b);
    } catch (const OrderError&) {
      continue;
    }
    if (is_valid_order(g, trial).ok) ord = trial;
  }
  return ord;
}

PartialOrder random_consistent_total_order(Rng& rng, const Graph& g) {
  int n = g.node_count();
  // random topological order over the arrows, parents first
  std::vector<int> pending(n);
  for (int v = 0; v < n; ++v) pending[v] = set_size(g.parents(v));
  std::vector<int> ready, placed;
  for (int v = 0; v < n; ++v)
    if (pending[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::size_t pick = rng() % ready.size();
    int v = ready[pick];
    ready.erase(ready.begin() + pick);
    placed.push_back(v);
    for_each_node(g.children(v), [&](int w) {
      if (--pending[w] == 0) ready.push_back(w);
    });
  }
  if (static_cast<int>(placed.size()) != n)
    throw PreconditionError("random_consistent_total_order: cyclic arrows");
  PartialOrder ord(n);
  for (std::size_t x = 0; x < placed.size(); ++x)
    for (std::size_t y = x + 1; y < placed.size(); ++y)
      ord.add_greater(placed[x], placed[y]);
  return ord;
}

IndependenceModel perturbed_graph_model(Rng& rng, const Graph& g, int extra,
                                        int bound) {
  IndependenceModel j = induced_model(g, bound);
  int n = g.node_count();
  for (int t = 0; t < extra; ++t) {
    int a = uniform_int(rng, 0, n - 1);
    int b = uniform_int(rng, 0, n - 1);
    if (a == b) continue;
    NodeSet rest = g.all_nodes() & ~bit(a) & ~bit(b);
    NodeSet c = 0;
    for_each_node(rest, [&](int v) {
      if (uniform01(rng) < 0.4) c |= bit(v);
    });
    j.insert(bit(a), bit(b), c);
  }
  j.set_provenance("perturbed-separation");
  return j;
}

namespace {

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rational> random_distribution(Rng& rng, int size) {
  std::vector<long> num(size);
  long total = 0;
  for (long& x : num) {
    x = uniform_int(rng, 1, 9);
    total += x;
  }
  std::vector<Rational> out;
  for (long x : num) out.push_back(make_rational(x, total));
  return out;
}

}  // namespace

Scm random_scm(Rng& rng, const Graph& g, const ScmGenOptions& opt) {
  int n = g.node_count();
  if (opt.translation && !is_dag(g))
    throw Error("translation SCMs are only generated over DAGs");

  // arc components, ascending
  std::vector<std::vector<int>> comps;
  {
    NodeSet seen = 0;
    for (int v = 0; v < n; ++v) {
      if (has(seen, v)) continue;
      NodeSet comp = district(g, v);
      seen |= comp;
      comps.push_back(set_to_nodes(comp));
    }
  }

  // Noise supports first: singleton blocks draw a small support, arc blocks
  // get one non-degenerate binary variable per arc and code the incident
  // bits into the node's noise value.
  std::vector<std::vector<Value>> noise_support(n);
  std::vector<NoiseBlock> blocks;
  for (const auto& comp : comps) {
    NoiseBlock b;
    b.nodes = comp;
    if (comp.size() == 1) {
      blocks.push_back(std::move(b));  // rows filled once supports are known
      continue;
    }
    // arcs inside the component
    std::vector<std::pair<int, int>> arcs;
    for (std::size_t x = 0; x < comp.size(); ++x)
      for (std::size_t y = x + 1; y < comp.size(); ++y)
        if (g.has_arc(comp[x], comp[y]))
          arcs.emplace_back(comp[x], comp[y]);
    std::vector<Rational> eta_p;  // P(eta_e = 1)
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      int a = uniform_int(rng, 1, 4), btot = uniform_int(rng, 6, 9);
      eta_p.push_back(make_rational(a, btot));
    }
    // node value = sum over incident arcs of bit << slot
    std::vector<std::vector<int>> slots(n);
    for (std::size_t e = 0; e < arcs.size(); ++e) {
      slots[arcs[e].first].push_back(static_cast<int>(e));
      slots[arcs[e].second].push_back(static_cast<int>(e));
    }
    std::size_t combos = std::size_t{1} << arcs.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
      BlockRow row;
      Rational p = 1;
      for (std::size_t e = 0; e < arcs.size(); ++e)
        p *= ((mask >> e) & 1) ? eta_p[e] : Rational(1) - eta_p[e];
      for (int v : comp) {
        Value val = 0;
        for (std::size_t k = 0; k < slots[v].size(); ++k)
          if ((mask >> slots[v][k]) & 1) val |= Value{1} << k;
        row.values.push_back(val);
      }
      row.prob = p;
      b.rows.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < comp.size(); ++k) {
      int v = comp[k];
      int bits = static_cast<int>(slots[v].size());
      for (Value val = 0; val < (Value{1} << bits); ++val)
        noise_support[v].push_back(val);
    }
    blocks.push_back(std::move(b));
  }

  // Endogenous supports; injective mechanisms need room for the noise, and
  // translation mechanisms need one modulus shared by every node so that a
  // parent sweep covers every residue.
  std::vector<std::vector<Value>> supports(n);
  int shared_modulus = uniform_int(rng, 2, opt.max_support);
  for (int v = 0; v < n; ++v) {
    int size = opt.translation ? shared_modulus
                               : uniform_int(rng, 2, opt.max_support);
    if (opt.force_injective && !noise_support[v].empty())
      size = std::max(size, static_cast<int>(noise_support[v].size()));
    for (Value x = 0; x < size; ++x) supports[v].push_back(x);
  }

  // Remaining (singleton) noise supports and tables.
  for (NoiseBlock& b : blocks) {
    if (b.nodes.size() != 1) continue;
    int v = b.nodes[0];
    int size;
    if (opt.translation)
      size = static_cast<int>(supports[v].size());
    else if (opt.force_injective)
      size = 2;
    else
      size = uniform_int(rng, 2, 3);
    for (Value x = 0; x < size; ++x) noise_support[v].push_back(x);
    std::vector<Rational> probs;
    if (opt.translation) {
      probs.assign(size, Rational(1, size));
    } else {
      probs = random_distribution(rng, size);
    }
    for (int k = 0; k < size; ++k)
      b.rows.push_back(BlockRow{{noise_support[v][k]}, probs[k]});
  }

  // Mechanism tables.
  std::vector<std::vector<MechanismRow>> mechanisms(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> pa = set_to_nodes(g.parents(v));
    std::size_t combos = 1;
    for (int p : pa) combos *= supports[p].size();
    int out_size = static_cast<int>(supports[v].size());
    for (std::size_t c = 0; c < combos; ++c) {
      ValueTuple pv(pa.size());
      std::size_t rest = c;
      for (int k = static_cast<int>(pa.size()) - 1; k >= 0; --k) {
        pv[k] = supports[pa[k]][rest % supports[pa[k]].size()];
        rest /= supports[pa[k]].size();
      }
      std::vector<int> image(noise_support[v].size());
      if (opt.translation) {
        long shift = 0;
        for (Value x : pv) shift += x;
        for (std::size_t e = 0; e < image.size(); ++e)
          image[e] = static_cast<int>((shift + e) % out_size);
      } else if (opt.force_injective) {
        std::vector<int> perm(out_size);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t e = 0; e < image.size(); ++e) image[e] = perm[e];
      } else {
        for (std::size_t e = 0; e < image.size(); ++e)
          image[e] = uniform_int(rng, 0, out_size - 1);
      }
      for (std::size_t e = 0; e < noise_support[v].size(); ++e)
        mechanisms[v].push_back(
            MechanismRow{pv, noise_support[v][e], supports[v][image[e]]});
    }
  }

  return Scm(g, std::move(supports), std::move(blocks), std::move(mechanisms),
             "random");
}

}  // namespace csl
