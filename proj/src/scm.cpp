#include "csl/scm.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace csl {

namespace {

constexpr std::size_t kMaxTableCells = 1u << 20;

std::string tuple_str(const ValueTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

int value_position(const std::vector<Value>& support, Value v,
                   const std::string& what) {
  auto it = std::find(support.begin(), support.end(), v);
  if (it == support.end())
    throw ScmError(what + ": value " + std::to_string(v) +
                   " outside the declared support");
  return static_cast<int>(it - support.begin());
}

// Arc-connected components, each as an ascending node list.
std::vector<std::vector<int>> arc_components(const Graph& g) {
  std::vector<std::vector<int>> out;
  NodeSet seen = 0;
  for (int v = 0; v < g.node_count(); ++v) {
    if (has(seen, v)) continue;
    NodeSet comp = district(g, v);
    seen |= comp;
    out.push_back(set_to_nodes(comp));
  }
  return out;
}

// Exact marginal of a block table over the given positions.
std::map<ValueTuple, Rational> block_marginal(const NoiseBlock& b,
                                              const std::vector<int>& pos) {
  std::map<ValueTuple, Rational> out;
  for (const BlockRow& r : b.rows) {
    ValueTuple key;
    key.reserve(pos.size());
    for (int p : pos) key.push_back(r.values[p]);
    out[key] += r.prob;
  }
  return out;
}

}  // namespace

Scm::Scm(Graph graph, std::vector<std::vector<Value>> supports,
         std::vector<NoiseBlock> noise_blocks,
         std::vector<std::vector<MechanismRow>> mechanisms, std::string name)
    : graph_(std::move(graph)),
      name_(std::move(name)),
      supports_(std::move(supports)),
      noise_blocks_(std::move(noise_blocks)),
      mechanisms_(std::move(mechanisms)) {
  validate();
}

void Scm::validate() {
  int n = graph_.node_count();
  auto anc = is_ancestral(graph_);
  if (!anc.ok)
    throw ScmError("causal graph is not ancestral (" + anc.text + ")");

  if (static_cast<int>(supports_.size()) != n)
    throw ScmError("supports must cover every node");
  for (int v = 0; v < n; ++v) {
    if (supports_[v].empty())
      throw ScmError("empty support for node " + graph_.label(v));
    std::set<Value> uniq(supports_[v].begin(), supports_[v].end());
    if (uniq.size() != supports_[v].size())
      throw ScmError("repeated support value for node " + graph_.label(v));
  }

  // Noise blocks are exactly the arc-components.
  auto comps = arc_components(graph_);
  std::set<std::vector<int>> expected(comps.begin(), comps.end());
  std::set<std::vector<int>> given;
  for (auto& b : noise_blocks_) {
    std::vector<int> sorted = b.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != b.nodes)
      throw ScmError("block nodes must be listed in ascending order");
    if (!given.insert(sorted).second) throw ScmError("repeated noise block");
  }
  if (given != expected)
    throw ScmError(
        "noise blocks must partition the nodes into the arc-connected "
        "components of the causal graph");

  // Block tables: positive rational rows, no repeats, total mass one.
  noise_supports_.assign(n, {});
  for (const NoiseBlock& b : noise_blocks_) {
    if (b.rows.empty()) throw ScmError("empty noise table");
    Rational total = 0;
    std::set<ValueTuple> seen;
    for (const BlockRow& r : b.rows) {
      if (r.values.size() != b.nodes.size())
        throw ScmError("noise row arity mismatch");
      if (!seen.insert(r.values).second)
        throw ScmError("repeated noise tuple " + tuple_str(r.values));
      if (r.prob <= 0)
        throw ScmError("noise probabilities must be positive rationals");
      total += r.prob;
    }
    if (total != 1) throw ScmError("noise table does not sum to 1");
    for (std::size_t k = 0; k < b.nodes.size(); ++k) {
      std::set<Value> vals;
      for (const BlockRow& r : b.rows) vals.insert(r.values[k]);
      noise_supports_[b.nodes[k]].assign(vals.begin(), vals.end());
    }
  }

  // Dependence mirrors arcs exactly: within a block, two disjoint node sets
  // factorize iff no arc crosses them.
  for (const NoiseBlock& b : noise_blocks_) {
    int k = static_cast<int>(b.nodes.size());
    if (k == 1) continue;
    NodeSet all = full_set(k);
    for_each_subset(all, [&](NodeSet sa) {
      if (sa == 0) return;
      for_each_subset(all & ~sa, [&](NodeSet sb) {
        if (sb == 0) return;
        if (first_node(sa) > first_node(sb)) return;  // unordered pairs once
        bool crossing = false;
        for_each_node(sa, [&](int pa) {
          for_each_node(sb, [&](int pb) {
            if (graph_.has_arc(b.nodes[pa], b.nodes[pb])) crossing = true;
          });
        });
        std::vector<int> pos_a = set_to_nodes(sa), pos_b = set_to_nodes(sb);
        std::vector<int> pos_ab;
        std::merge(pos_a.begin(), pos_a.end(), pos_b.begin(), pos_b.end(),
                   std::back_inserter(pos_ab));
        auto ma = block_marginal(b, pos_a);
        auto mb = block_marginal(b, pos_b);
        auto mab = block_marginal(b, pos_ab);
        bool factorizes = true;
        for (const auto& [ta, pa] : ma) {
          for (const auto& [tb, pb] : mb) {
            ValueTuple tab;
            std::size_t ia = 0, ib = 0;
            for (int p : pos_ab)
              tab.push_back(std::binary_search(pos_a.begin(), pos_a.end(), p)
                                ? ta[ia++]
                                : tb[ib++]);
            auto it = mab.find(tab);
            Rational joint = it == mab.end() ? Rational(0) : it->second;
            if (joint != pa * pb) factorizes = false;
          }
        }
        if (crossing && factorizes)
          throw ScmError("noise block factorizes across the arc-separated "
                         "split " + describe_block_split(b, sa, sb));
        if (!crossing && !factorizes)
          throw ScmError("noise block is dependent across the arc-free "
                         "split " + describe_block_split(b, sa, sb));
      });
    });
  }

  // Mechanisms: total lookup tables over parent supports x noise support.
  if (static_cast<int>(mechanisms_.size()) != n)
    throw ScmError("mechanisms must cover every node");
  mech_dense_.assign(n, {});
  for (int v = 0; v < n; ++v) {
    std::vector<int> pa = set_to_nodes(graph_.parents(v));
    std::size_t slots = noise_supports_[v].size();
    for (int p : pa) slots *= supports_[p].size();
    std::vector<Value> dense(slots);
    std::vector<bool> filled(slots, false);
    for (const MechanismRow& r : mechanisms_[v]) {
      if (r.parents.size() != pa.size())
        throw ScmError("mechanism row arity mismatch at node " +
                       graph_.label(v));
      std::size_t idx = 0;
      for (std::size_t k = 0; k < pa.size(); ++k)
        idx = idx * supports_[pa[k]].size() +
              value_position(supports_[pa[k]], r.parents[k],
                             "mechanism of " + graph_.label(v));
      idx = idx * noise_supports_[v].size() +
            value_position(noise_supports_[v], r.noise,
                           "mechanism noise of " + graph_.label(v));
      value_position(supports_[v], r.out, "mechanism output of " +
                     graph_.label(v));
      if (filled[idx])
        throw ScmError("repeated mechanism row at node " + graph_.label(v));
      filled[idx] = true;
      dense[idx] = r.out;
    }
    for (std::size_t i = 0; i < slots; ++i)
      if (!filled[i])
        throw ScmError("mechanism of node " + graph_.label(v) +
                       " is not total");
    mech_dense_[v] = std::move(dense);
  }
}

std::string Scm::describe_block_split(const NoiseBlock& b, NodeSet sa,
                                      NodeSet sb) const {
  auto part = [&](NodeSet s) {
    std::string out = "{";
    bool first = true;
    for_each_node(s, [&](int p) {
      if (!first) out += ',';
      out += graph_.label(b.nodes[p]);
      first = false;
    });
    return out + "}";
  };
  return part(sa) + " / " + part(sb);
}

Value Scm::apply_mechanism(int v, const ValueTuple& parent_values,
                           Value noise) const {
  std::vector<int> pa = set_to_nodes(graph_.parents(v));
  if (parent_values.size() != pa.size())
    throw ScmError("apply_mechanism: wrong parent arity");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < pa.size(); ++k)
    idx = idx * supports_[pa[k]].size() +
          value_position(supports_[pa[k]], parent_values[k], "parent value");
  idx = idx * noise_supports_[v].size() +
        value_position(noise_supports_[v], noise, "noise value");
  return mech_dense_[v][idx];
}

std::vector<Rational> Scm::noise_marginal(int v) const {
  for (const NoiseBlock& b : noise_blocks_) {
    auto it = std::find(b.nodes.begin(), b.nodes.end(), v);
    if (it == b.nodes.end()) continue;
    int pos = static_cast<int>(it - b.nodes.begin());
    auto m = block_marginal(b, {pos});
    std::vector<Rational> out;
    for (Value val : noise_supports_[v]) out.push_back(m.at({val}));
    return out;
  }
  throw ScmError("node not covered by any noise block");
}

// --- joint distribution ---------------------------------------------------

JointTable::JointTable(std::vector<std::vector<Value>> supports,
                       std::vector<std::string> labels)
    : supports_(std::move(supports)), labels_(std::move(labels)) {
  std::size_t cells = 1;
  for (const auto& s : supports_) {
    cells *= s.size();
    if (cells > kMaxTableCells) throw BoundError("joint table too large");
  }
  probs_.assign(cells, Rational(0));
}

Rational& JointTable::cell(const std::vector<int>& positions) {
  std::size_t idx = 0;
  for (int v = 0; v < node_count(); ++v)
    idx = idx * supports_[v].size() + positions[v];
  return probs_[idx];
}

const Rational& JointTable::cell(const std::vector<int>& positions) const {
  return const_cast<JointTable*>(this)->cell(positions);
}

Rational JointTable::total() const {
  return std::accumulate(probs_.begin(), probs_.end(), Rational(0));
}

JointTable joint_distribution(const Scm& s) {
  const Graph& g = s.graph();
  int n = g.node_count();
  JointTable table(
      [&] {
        std::vector<std::vector<Value>> sup;
        for (int v = 0; v < n; ++v) sup.push_back(s.support(v));
        return sup;
      }(),
      g.labels());

  // Topological order over arrows.
  std::vector<int> topo;
  {
    std::vector<int> indeg(n, 0);
    for (int v = 0; v < n; ++v) indeg[v] = set_size(g.parents(v));
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      int v = ready.back();
      ready.pop_back();
      topo.push_back(v);
      for_each_node(g.children(v), [&](int w) {
        if (--indeg[w] == 0) ready.push_back(w);
      });
    }
    if (static_cast<int>(topo.size()) != n)
      throw ScmError("cyclic arrow structure");
  }

  const auto& blocks = s.noise_blocks();
  std::size_t combos = 1;
  for (const NoiseBlock& b : blocks) {
    combos *= b.rows.size();
    if (combos > kMaxTableCells) throw BoundError("noise space too large");
  }

  std::vector<Value> noise(n, 0);
  std::vector<Value> value(n, 0);
  std::vector<int> positions(n, 0);
  for (std::size_t combo = 0; combo < combos; ++combo) {
    std::size_t rest = combo;
    Rational prob = 1;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const NoiseBlock& b = blocks[bi];
      std::size_t r = rest % b.rows.size();
      rest /= b.rows.size();
      prob *= b.rows[r].prob;
      for (std::size_t k = 0; k < b.nodes.size(); ++k)
        noise[b.nodes[k]] = b.rows[r].values[k];
    }
    for (int v : topo) {
      ValueTuple pv;
      for_each_node(s.graph().parents(v),
                    [&](int p) { pv.push_back(value[p]); });
      value[v] = s.apply_mechanism(v, pv, noise[v]);
    }
    for (int v = 0; v < n; ++v)
      positions[v] = value_position(s.support(v), value[v], "joint cell");
    table.cell(positions) += prob;
  }
  return table;
}

// --- conditional independence ---------------------------------------------

namespace {

struct MarginalIndexer {
  std::vector<int> nodes;        // ascending
  std::vector<std::size_t> stride;  // per node in `nodes`
  std::size_t size = 1;

  MarginalIndexer(const JointTable& t, NodeSet s) {
    nodes = set_to_nodes(s);
    stride.assign(nodes.size(), 0);
    for (int k = static_cast<int>(nodes.size()) - 1; k >= 0; --k) {
      stride[k] = size;
      size *= t.support(nodes[k]).size();
    }
  }
};

}  // namespace

bool ci_query(const JointTable& t, const SeparationQuery& q) {
  NodeSet uni = full_set(t.node_count());
  if ((q.a & ~uni) || (q.b & ~uni) || (q.c & ~uni))
    throw Error("ci_query outside the node set");
  if ((q.a & q.b) || (q.a & q.c) || (q.b & q.c))
    throw Error("ci_query sets must be pairwise disjoint");
  if (q.a == 0 || q.b == 0) return true;

  MarginalIndexer abc(t, q.a | q.b | q.c);
  MarginalIndexer ac(t, q.a | q.c);
  MarginalIndexer bc(t, q.b | q.c);
  MarginalIndexer c(t, q.c);
  std::vector<Rational> pabc(abc.size, Rational(0)),
      pac(ac.size, Rational(0)), pbc(bc.size, Rational(0)),
      pc(c.size, Rational(0));

  auto proj = [](const MarginalIndexer& m, const std::vector<int>& pos) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < m.nodes.size(); ++k)
      idx += m.stride[k] * pos[m.nodes[k]];
    return idx;
  };

  t.for_each_cell([&](const std::vector<int>& pos, const Rational& p) {
    if (p == 0) return;
    pabc[proj(abc, pos)] += p;
    pac[proj(ac, pos)] += p;
    pbc[proj(bc, pos)] += p;
    pc[proj(c, pos)] += p;
  });

  // P(abc) * P(c) == P(ac) * P(bc) for every assignment.
  bool ok = true;
  std::vector<int> pos(t.node_count(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (!ok) return;
    if (k == abc.nodes.size()) {
      std::size_t iabc = proj(abc, pos);
      if (pabc[iabc] * pc[proj(c, pos)] != pac[proj(ac, pos)] * pbc[proj(bc, pos)])
        ok = false;
      return;
    }
    int v = abc.nodes[k];
    for (std::size_t i = 0; i < t.support(v).size(); ++i) {
      pos[v] = static_cast<int>(i);
      rec(k + 1);
    }
  };
  rec(0);
  return ok;
}

bool ci_query(const Scm& s, const SeparationQuery& q) {
  return ci_query(joint_distribution(s), q);
}

namespace {

IndependenceModel induced_model_scm_impl(const Scm& s, int bound,
                                         bool parallel, int jobs) {
  JointTable t = joint_distribution(s);
  IndependenceModel out(s.graph().labels(), bound);
  out.set_provenance("scm:" + (s.name().empty() ? "?" : s.name()));
  const std::size_t space = out.space_size();
  std::vector<std::uint8_t> hit(space, 0);
  auto eval = [&](std::size_t idx) {
    auto tri = out.unpack(idx);
    if (tri.a == 0 || tri.b == 0 || tri.a > tri.b) return;
    if (ci_query(t, {tri.a, tri.b, tri.c})) hit[idx] = 1;
  };
  if (parallel) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#pragma omp parallel for schedule(dynamic, 64)
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
      auto tri = out.unpack(idx);
      out.insert(tri.a, tri.b, tri.c);
    }
  return out;
}

}  // namespace

IndependenceModel induced_model_scm(const Scm& s, int bound) {
  return induced_model_scm_impl(s, bound, false, 0);
}

IndependenceModel induced_model_scm_parallel(const Scm& s, int bound,
                                             int jobs) {
  return induced_model_scm_impl(s, bound, true, jobs);
}

// --- SCM-side conditions ----------------------------------------------------

PositivityVerdict check_positivity(const Scm& s) {
  JointTable t = joint_distribution(s);
  int n = t.node_count();
  NodeSet uni = full_set(n);
  PositivityVerdict out{true, std::nullopt};
  for_each_subset_asc(uni, [&](NodeSet a) {
    if (!out.ok || a == 0) return;
    for_each_subset_asc(uni & ~a, [&](NodeSet b) {
      if (!out.ok || b == 0) return;
      if (first_node(b) < first_node(a)) return;  // unordered pair once
      MarginalIndexer ma(t, a), mb(t, b), mab(t, a | b);
      std::vector<Rational> pa(ma.size, Rational(0)),
          pb(mb.size, Rational(0)), pab(mab.size, Rational(0));
      auto proj = [](const MarginalIndexer& m, const std::vector<int>& pos) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < m.nodes.size(); ++k)
          idx += m.stride[k] * pos[m.nodes[k]];
        return idx;
      };
      t.for_each_cell([&](const std::vector<int>& pos, const Rational& p) {
        if (p == 0) return;
        pa[proj(ma, pos)] += p;
        pb[proj(mb, pos)] += p;
        pab[proj(mab, pos)] += p;
      });
      std::vector<int> pos(n, 0);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (!out.ok) return;
        if (k == mab.nodes.size()) {
          if (pa[proj(ma, pos)] > 0 && pb[proj(mb, pos)] > 0 &&
              pab[proj(mab, pos)] == 0) {
            PositivityWitness w;
            w.a = a;
            w.b = b;
            for (int v : ma.nodes) w.xa.push_back(t.support(v)[pos[v]]);
            for (int v : mb.nodes) w.xb.push_back(t.support(v)[pos[v]]);
            std::ostringstream os;
            os << "P(X_A=" << tuple_str(w.xa) << ") > 0 and P(X_B="
               << tuple_str(w.xb) << ") > 0 but the joint cell is 0";
            w.text = os.str();
            out = {false, w};
          }
          return;
        }
        int v = mab.nodes[k];
        for (std::size_t i = 0; i < t.support(v).size(); ++i) {
          pos[v] = static_cast<int>(i);
          rec(k + 1);
        }
      };
      rec(0);
    });
  });
  return out;
}

MechanismVerdict check_noise_injective(const Scm& s) {
  const Graph& g = s.graph();
  for (int v = 0; v < g.node_count(); ++v) {
    std::vector<int> pa = set_to_nodes(g.parents(v));
    std::vector<std::size_t> radix;
    std::size_t combos = 1;
    for (int p : pa) {
      radix.push_back(s.support(p).size());
      combos *= s.support(p).size();
    }
    for (std::size_t c = 0; c < combos; ++c) {
      ValueTuple pv(pa.size());
      std::size_t rest = c;
      for (int k = static_cast<int>(pa.size()) - 1; k >= 0; --k) {
        pv[k] = s.support(pa[k])[rest % radix[k]];
        rest /= radix[k];
      }
      std::map<Value, Value> seen;  // out -> noise
      for (Value e : s.noise_support(v)) {
        Value o = s.apply_mechanism(v, pv, e);
        auto [it, fresh] = seen.emplace(o, e);
        if (!fresh) {
          MechanismWitness w;
          w.node = v;
          w.parent_values = pv;
          w.e1 = it->second;
          w.e2 = e;
          w.text = "mechanism of " + g.label(v) + " at parents " +
                   tuple_str(pv) + " maps noises " + std::to_string(it->second) +
                   " and " + std::to_string(e) + " to the same output";
          return {false, w};
        }
      }
    }
  }
  return {true, std::nullopt};
}

MechanismVerdict check_non_constant_fibers(const Scm& s) {
  const Graph& g = s.graph();
  JointTable t = joint_distribution(s);
  auto proj = [](const MarginalIndexer& m, const std::vector<int>& pos) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < m.nodes.size(); ++k)
      idx += m.stride[k] * pos[m.nodes[k]];
    return idx;
  };
  for (int v = 0; v < g.node_count(); ++v) {
    std::vector<int> pa = set_to_nodes(g.parents(v));
    std::vector<Rational> noise = s.noise_marginal(v);
    for (std::size_t jpos = 0; jpos < pa.size(); ++jpos) {
      int jnode = pa[jpos];
      NodeSet others = g.parents(v) & ~bit(jnode);
      // positive-probability assignments of the other parents
      MarginalIndexer mo(t, others);
      std::vector<Rational> pother(mo.size, Rational(0));
      MarginalIndexer mj(t, bit(jnode));
      std::vector<Rational> pj(mj.size, Rational(0));
      t.for_each_cell([&](const std::vector<int>& pos, const Rational& p) {
        if (p == 0) return;
        pother[proj(mo, pos)] += p;
        pj[proj(mj, pos)] += p;
      });
      std::vector<Value> jvals;  // support of the marginal law of X_j
      for (std::size_t i = 0; i < s.support(jnode).size(); ++i)
        if (pj[i] > 0) jvals.push_back(s.support(jnode)[i]);

      bool position_ok = false;
      std::vector<int> opos(mo.nodes.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (position_ok) return;
        if (k == mo.nodes.size()) {
          std::size_t oidx = 0;
          for (std::size_t q = 0; q < mo.nodes.size(); ++q)
            oidx += mo.stride[q] * opos[q];
          if (pother[oidx] == 0) return;
          // output law per x_j under the marginal noise
          std::vector<std::vector<Rational>> dist;
          for (Value xj : jvals) {
            ValueTuple pv(pa.size());
            for (std::size_t q = 0, oq = 0; q < pa.size(); ++q) {
              if (q == jpos)
                pv[q] = xj;
              else {
                pv[q] = s.support(mo.nodes[oq])[opos[oq]];
                ++oq;
              }
            }
            std::vector<Rational> d(s.support(v).size(), Rational(0));
            for (std::size_t e = 0; e < s.noise_support(v).size(); ++e) {
              Value o = s.apply_mechanism(v, pv, s.noise_support(v)[e]);
              d[value_position(s.support(v), o, "fiber check")] += noise[e];
            }
            dist.push_back(std::move(d));
          }
          for (std::size_t x = 1; x < dist.size(); ++x)
            if (dist[x] != dist[0]) {
              position_ok = true;
              return;
            }
          return;
        }
        for (std::size_t i = 0; i < s.support(mo.nodes[k]).size(); ++i) {
          opos[k] = static_cast<int>(i);
          rec(k + 1);
        }
      };
      rec(0);
      if (!position_ok) {
        MechanismWitness w;
        w.node = v;
        w.parent = jnode;
        w.text = "mechanism of " + g.label(v) +
                 ": the output law never depends on parent " + g.label(jnode);
        return {false, w};
      }
    }
  }
  return {true, std::nullopt};
}

MechanismVerdict check_noise_surjective(const Scm& s) {
  auto inj = check_noise_injective(s);
  if (!inj.ok)
    throw PreconditionError(
        "check_noise_surjective: noise injectivity fails, the inverse is "
        "undefined (" + inj.witness->text + ")");
  const Graph& g = s.graph();
  for (int v = 0; v < g.node_count(); ++v) {
    std::vector<int> pa = set_to_nodes(g.parents(v));
    std::set<Value> full(s.noise_support(v).begin(),
                         s.noise_support(v).end());
    for (std::size_t jpos = 0; jpos < pa.size(); ++jpos) {
      int jnode = pa[jpos];
      // assignments of the other parents over their declared supports
      std::vector<int> others;
      for (std::size_t q = 0; q < pa.size(); ++q)
        if (q != jpos) others.push_back(pa[q]);
      std::size_t combos = 1;
      for (int p : others) combos *= s.support(p).size();
      for (std::size_t c = 0; c < combos; ++c) {
        ValueTuple ov(others.size());
        std::size_t rest = c;
        for (int k = static_cast<int>(others.size()) - 1; k >= 0; --k) {
          ov[k] = s.support(others[k])[rest % s.support(others[k]).size()];
          rest /= s.support(others[k]).size();
        }
        bool some_output_sweeps = false;
        for (Value xstar : s.support(v)) {
          std::set<Value> preimages;
          for (Value xj : s.support(jnode)) {
            ValueTuple pv(pa.size());
            for (std::size_t q = 0, oq = 0; q < pa.size(); ++q)
              pv[q] = (q == jpos) ? xj : ov[oq++];
            for (Value e : s.noise_support(v))
              if (s.apply_mechanism(v, pv, e) == xstar) preimages.insert(e);
          }
          if (preimages == full) {
            some_output_sweeps = true;
            break;
          }
        }
        if (!some_output_sweeps) {
          MechanismWitness w;
          w.node = v;
          w.parent = jnode;
          w.parent_values = ov;
          w.text = "mechanism of " + g.label(v) + ", parent " +
                   g.label(jnode) + ", other parents " + tuple_str(ov) +
                   ": no output value has noise preimages covering the "
                   "noise support";
          return {false, w};
        }
      }
    }
  }
  return {true, std::nullopt};
}

std::vector<std::pair<int, bool>> check_noise_uniform(const Scm& s) {
  std::vector<std::pair<int, bool>> out;
  for (int v = 0; v < s.node_count(); ++v) {
    auto m = s.noise_marginal(v);
    bool uniform = true;
    for (const Rational& p : m)
      if (p != m[0]) uniform = false;
    out.emplace_back(v, uniform);
  }
  return out;
}

}  // namespace csl
