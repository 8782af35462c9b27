#include "csl/imodel.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "csl/separation.hpp"

namespace csl {

IndependenceModel::IndependenceModel(std::vector<std::string> labels,
                                     int bound)
    : labels_(std::move(labels)), n_(static_cast<int>(labels_.size())) {
  int cap = std::min(bound, kHardBound);
  if (n_ > cap)
    throw BoundError("independence model over " + std::to_string(n_) +
                     " nodes exceeds the bound of " + std::to_string(cap));
  bits_.assign((space_size() + 63) / 64, 0);
}

std::size_t IndependenceModel::pack(NodeSet a, NodeSet b, NodeSet c) {
  std::size_t idx = 0;
  for_each_node(a, [&](int v) { idx |= std::size_t{1} << (2 * v); });
  for_each_node(b, [&](int v) { idx |= std::size_t{2} << (2 * v); });
  for_each_node(c, [&](int v) { idx |= std::size_t{3} << (2 * v); });
  return idx;
}

IndependenceModel::Triple IndependenceModel::unpack(std::size_t idx) const {
  Triple t{0, 0, 0};
  for (int v = 0; v < n_; ++v) {
    switch ((idx >> (2 * v)) & 3) {
      case 1: t.a |= bit(v); break;
      case 2: t.b |= bit(v); break;
      case 3: t.c |= bit(v); break;
      default: break;
    }
  }
  return t;
}

void IndependenceModel::check_triple(NodeSet a, NodeSet b, NodeSet c) const {
  NodeSet uni = universe();
  if ((a & ~uni) || (b & ~uni) || (c & ~uni))
    throw Error("triple mentions nodes outside the universe");
  if ((a & b) || (a & c) || (b & c))
    throw Error("triple sets must be pairwise disjoint");
}

bool IndependenceModel::contains(NodeSet a, NodeSet b, NodeSet c) const {
  check_triple(a, b, c);
  if (a == 0 || b == 0) return true;  // held by convention, never stored
  return contains_index(pack(a, b, c));
}

bool IndependenceModel::contains_index(std::size_t idx) const {
  return (bits_[idx >> 6] >> (idx & 63)) & 1;
}

void IndependenceModel::set_index(std::size_t idx, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (idx & 63);
  std::uint64_t& word = bits_[idx >> 6];
  bool old = word & mask;
  if (old == value) return;
  word ^= mask;
  if (value)
    ++count_;
  else
    --count_;
}

void IndependenceModel::insert(NodeSet a, NodeSet b, NodeSet c) {
  check_triple(a, b, c);
  if (a == 0 || b == 0) return;
  set_index(pack(a, b, c), true);
  set_index(pack(b, a, c), true);
}

void IndependenceModel::erase(NodeSet a, NodeSet b, NodeSet c) {
  check_triple(a, b, c);
  if (a == 0 || b == 0) return;
  set_index(pack(a, b, c), false);
  set_index(pack(b, a, c), false);
}

bool IndependenceModel::is_subset_of(const IndependenceModel& other) const {
  if (labels_ != other.labels_) throw Error("universe mismatch");
  for (std::size_t w = 0; w < bits_.size(); ++w)
    if (bits_[w] & ~other.bits_[w]) return false;
  return true;
}

std::optional<std::size_t> IndependenceModel::first_statement_not_in(
    const IndependenceModel& other) const {
  if (labels_ != other.labels_) throw Error("universe mismatch");
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t diff = bits_[w] & ~other.bits_[w];
    if (diff != 0) return (w << 6) + std::countr_zero(diff);
  }
  return std::nullopt;
}

std::string IndependenceModel::describe_set(NodeSet s) const {
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

std::string IndependenceModel::describe_triple(NodeSet a, NodeSet b,
                                               NodeSet c) const {
  return describe_set(a) + " _||_ " + describe_set(b) + " | " +
         describe_set(c);
}

// --- model-only checks --------------------------------------------------

Skeleton skeleton_of_model(const IndependenceModel& j) {
  int n = j.node_count();
  Skeleton sk(j.labels());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool separated = false;
      NodeSet rest = j.universe() & ~bit(a) & ~bit(b);
      for_each_subset(rest, [&](NodeSet c) {
        if (!separated && j.contains(bit(a), bit(b), c)) separated = true;
      });
      if (!separated) sk.add_edge(a, b);
    }
  return sk;
}

IndependenceModel marginalize_model(const IndependenceModel& j, NodeSet m) {
  if ((m & ~j.universe()) != 0)
    throw Error("marginalize_model: m outside the universe");
  std::vector<std::string> labels;
  std::vector<int> remap(j.node_count(), -1);
  for (int v = 0; v < j.node_count(); ++v) {
    if (has(m, v)) continue;
    remap[v] = static_cast<int>(labels.size());
    labels.push_back(j.labels()[v]);
  }
  IndependenceModel out(std::move(labels), IndependenceModel::kHardBound);
  auto shrink = [&](NodeSet s) {
    NodeSet r = 0;
    for_each_node(s, [&](int v) { r |= bit(remap[v]); });
    return r;
  };
  j.for_each_statement([&](NodeSet a, NodeSet b, NodeSet c) {
    if (((a | b | c) & m) == 0) out.insert(shrink(a), shrink(b), shrink(c));
  });
  out.set_provenance("marginal(" + j.provenance() + ")");
  return out;
}

namespace {

// Paths <i, i1..ir, k, j> in sk with i !~ j and every i_t ~ j. Calls
// f(i, U, k, j); returns false from f to stop early.
bool scan_stability_paths(
    const Skeleton& sk,
    const std::function<bool(int, NodeSet, int, int)>& f) {
  int n = sk.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || sk.adjacent(i, j)) continue;
      // DFS over prefixes i, i1.. with all i_t adjacent to j.
      std::vector<std::pair<int, NodeSet>> frontier;
      frontier.emplace_back(i, bit(i));
      while (!frontier.empty()) {
        auto [v, used] = frontier.back();
        frontier.pop_back();
        NodeSet next = sk.neighbors(v) & ~used & ~bit(j);
        bool stop = false;
        for_each_node(next, [&](int k) {
          if (stop) return;
          if (!sk.adjacent(k, j)) return;
          NodeSet u = used & ~bit(i);  // inner nodes so far
          if (!f(i, u, k, j)) {
            stop = true;
            return;
          }
          frontier.emplace_back(k, used | bit(k));
        });
        if (stop) return false;
      }
    }
  }
  return true;
}

}  // namespace

StabilityVerdict v_stable(const IndependenceModel& j) {
  Skeleton sk = skeleton_of_model(j);
  int n = j.node_count();
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj) {
      if (sk.adjacent(i, jj)) continue;
      NodeSet mid = sk.neighbors(i) & sk.neighbors(jj);
      StabilityVerdict bad;
      for_each_node(mid, [&](int k) {
        if (bad.witness) return;
        NodeSet rest = j.universe() & ~bit(i) & ~bit(jj) & ~bit(k);
        for_each_subset_asc(rest, [&](NodeSet c) {
          if (bad.witness) return;
          if (j.contains(bit(i), bit(jj), c) &&
              j.contains(bit(i), bit(jj), c | bit(k))) {
            StabilityWitness w;
            w.i = i;
            w.k = k;
            w.j = jj;
            w.c = c;
            w.text = "V-configuration <" + j.labels()[i] + "," +
                     j.labels()[k] + "," + j.labels()[jj] + "> with " +
                     j.describe_triple(bit(i), bit(jj), c) + " and " +
                     j.describe_triple(bit(i), bit(jj), c | bit(k));
            bad.witness = w;
          }
        });
      });
      if (bad.witness) return bad;
    }
  return {true, std::nullopt};
}

StabilityVerdict path_stable(const IndependenceModel& j) {
  Skeleton sk = skeleton_of_model(j);
  StabilityVerdict bad{true, std::nullopt};
  scan_stability_paths(sk, [&](int i, NodeSet u, int k, int jj) {
    NodeSet rest = j.universe() & ~bit(i) & ~bit(jj) & ~bit(k) & ~u;
    bool keep_going = true;
    for_each_subset_asc(rest, [&](NodeSet c) {
      if (!keep_going) return;
      if (j.contains(bit(i), bit(jj), u | c) &&
          j.contains(bit(i), bit(jj), u | c | bit(k))) {
        StabilityWitness w;
        w.i = i;
        w.k = k;
        w.j = jj;
        w.u = u;
        w.c = c;
        w.text = "path pivot <" + j.labels()[i] + ",U=" + j.describe_set(u) +
                 "," + j.labels()[k] + "," + j.labels()[jj] + "> with " +
                 j.describe_triple(bit(i), bit(jj), u | c) + " and " +
                 j.describe_triple(bit(i), bit(jj), u | c | bit(k));
        bad = {false, w};
        keep_going = false;
      }
    });
    return keep_going;
  });
  return bad;
}

// --- checks against a graph ---------------------------------------------

void require_same_universe(const IndependenceModel& j, const Graph& g) {
  if (j.labels() != g.labels())
    throw Error("universe mismatch between model and graph");
}

ModelGraphVerdict is_markovian(const IndependenceModel& j, const Graph& g) {
  require_same_universe(j, g);
  IndependenceModel jg = induced_model(g, IndependenceModel::kHardBound);
  auto missing = jg.first_statement_not_in(j);
  if (!missing) return {true, std::nullopt};
  auto t = jg.unpack(*missing);
  TripleWitness w{t.a, t.b, t.c,
                  "separation " + j.describe_triple(t.a, t.b, t.c) +
                      " missing from the model"};
  return {false, w};
}

bool is_faithful(const IndependenceModel& j, const Graph& g) {
  require_same_universe(j, g);
  return induced_model(g, IndependenceModel::kHardBound) == j;
}

bool is_minimally_markovian(const IndependenceModel& j, const Graph& g) {
  return is_markovian(j, g).ok && skeleton(g) == skeleton_of_model(j);
}

PairVerdict converse_pairwise_markov(const IndependenceModel& j,
                                     const Graph& g) {
  require_same_universe(j, g);
  for (int a = 0; a < g.node_count(); ++a)
    for (int b = a + 1; b < g.node_count(); ++b) {
      if (!g.adjacent(a, b)) continue;
      NodeSet cond = anc_pair(g, a, b);
      if (j.contains(bit(a), bit(b), cond)) {
        PairWitness w{a, b,
                      "adjacent pair " + g.label(a) + " ~ " + g.label(b) +
                          " with " + j.describe_triple(bit(a), bit(b), cond) +
                          " in the model"};
        return {false, w};
      }
    }
  return {true, std::nullopt};
}

OrientationVerdict orientation_faithful(const IndependenceModel& j,
                                        const Graph& g) {
  require_same_universe(j, g);
  auto anc = is_ancestral(g);
  if (!anc.ok)
    throw PreconditionError("orientation_faithful: graph is not ancestral");
  int n = g.node_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      NodeSet mid = g.neighbors(a) & g.neighbors(b);
      OrientationVerdict bad{true, std::nullopt};
      for_each_node(mid, [&](int l) {
        if (!bad.ok) return;
        NodeSet rest = g.all_nodes() & ~bit(a) & ~bit(b);
        for_each_subset_asc(rest, [&](NodeSet s) {
          if (!bad.ok) return;
          if (!j.contains(bit(a), bit(b), s)) return;
          if (!m_separated(g, {bit(a), bit(b), s})) {
            OrientationWitness w;
            w.a = a;
            w.l = l;
            w.b = b;
            w.s = s;
            w.text = "V-configuration <" + g.label(a) + "," + g.label(l) +
                     "," + g.label(b) + ">: connected given " +
                     j.describe_set(s) + " yet " +
                     j.describe_triple(bit(a), bit(b), s) + " in the model";
            bad = {false, w};
          }
        });
      });
      if (!bad.ok) return bad;
    }
  return {true, std::nullopt};
}

}  // namespace csl
