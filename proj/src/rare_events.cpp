#include "phylorel/rare_events.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "phylorel/codec.hpp"
#include "phylorel/oracles.hpp"

namespace phylorel {

int QuotientGraph::class_of(const std::string& taxon) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (std::binary_search(classes[c].begin(), classes[c].end(), taxon))
      return static_cast<int>(c);
  throw_validation("UnknownTaxon", "taxon '" + taxon + "' not in quotient", {taxon});
}

bool QuotientGraph::discrete() const {
  for (const auto& c : classes)
    if (c.size() > 1) return false;
  return true;
}

std::vector<int> QuotientGraph::neighbors(int cls) const {
  std::set<int> out;
  for (const auto& a : arcs) {
    if (a.a == cls) out.insert(a.b);
    if (a.b == cls) out.insert(a.a);
  }
  return std::vector<int>(out.begin(), out.end());
}

const QuotientArc* QuotientGraph::arc_between(int c1, int c2) const {
  for (const auto& a : arcs)
    if ((a.a == c1 && a.b == c2) || (a.a == c2 && a.b == c1)) return &a;
  return nullptr;
}

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int x) { return up[x] == x ? x : up[x] = find(up[x]); }
  bool join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    up[b] = a;  // keep the smallest index as representative
    return true;
  }
};

}  // namespace

QuotientGraph build_quotient(const EventRelation& r) {
  const auto& taxa = r.taxa();
  const int n = static_cast<int>(taxa.size());
  auto index_of = [&](const std::string& t) {
    return static_cast<int>(std::lower_bound(taxa.begin(), taxa.end(), t) - taxa.begin());
  };

  // zero classes
  UnionFind uf(n);
  std::set<std::pair<int, int>> zero_pairs;
  for (const auto& rec : r.records())
    if (rec.kind == PairKind::Zero) {
      int a = index_of(rec.a), b = index_of(rec.b);
      uf.join(a, b);
      zero_pairs.insert({std::min(a, b), std::max(a, b)});
    }
  // closure must be present in the records; a one-record inside a class is a conflict
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (uf.find(a) != uf.find(b)) continue;
      if (zero_pairs.count({a, b})) continue;
      auto rec = r.record(taxa[a], taxa[b]);
      if (rec)
        throw_validation("ZeroOneConflict",
                         "pair is zero-related through its class but carries a one-relation",
                         {taxa[a], taxa[b]});
      // witness a middle vertex of the zero path
      std::string middle;
      for (int c = 0; c < n && middle.empty(); ++c)
        if (c != a && c != b && uf.find(c) == uf.find(a) &&
            (zero_pairs.count({std::min(a, c), std::max(a, c)}) ||
             zero_pairs.count({std::min(b, c), std::max(b, c)})))
          middle = taxa[c];
      throw_validation("NotEquivalence", "zero relation is not transitively closed",
                       {taxa[a], middle, taxa[b]});
    }

  QuotientGraph g;
  g.taxa = taxa;
  g.mode = r.mode();
  std::map<int, int> class_id;  // uf representative -> class index
  {
    std::map<int, std::vector<std::string>> members;
    for (int i = 0; i < n; ++i) members[uf.find(i)].push_back(taxa[i]);
    for (auto& [root, mem] : members) {
      class_id[root] = static_cast<int>(g.classes.size());
      g.classes.push_back(mem);  // members sorted: taxa iterated in order
    }
  }
  const int k = static_cast<int>(g.classes.size());
  auto cls_of_idx = [&](int taxon_idx) { return class_id.at(uf.find(taxon_idx)); };

  // one-relations must be constant across class pairs (Lemma 5.4.1)
  struct CrossKind {
    PairKind kind;
    bool forward;  // DirOne: true = (smaller class) -> (larger class)
    std::pair<std::string, std::string> witness;
  };
  std::map<std::pair<int, int>, std::vector<CrossKind>> cross;
  for (const auto& rec : r.records()) {
    if (rec.kind == PairKind::Zero) continue;
    int ca = cls_of_idx(index_of(rec.a));
    int cb = cls_of_idx(index_of(rec.b));
    PairKind kind = rec.kind;
    if (g.mode == RelationMode::Mixed && kind == PairKind::SymOne) kind = PairKind::UnkOne;
    bool forward = ca < cb;
    auto key = std::minmax(ca, cb);
    cross[{key.first, key.second}].push_back({kind, forward, {rec.a, rec.b}});
  }
  for (auto& [key, kinds] : cross) {
    auto [ca, cb] = key;
    for (const auto& ck : kinds) {
      if (ck.kind != kinds[0].kind)
        throw_validation("MixedKindConflict", "one class pair carries two record kinds",
                         {kinds[0].witness.first, kinds[0].witness.second, ck.witness.first,
                          ck.witness.second});
      if (ck.kind == PairKind::DirOne && ck.forward != kinds[0].forward)
        throw_validation("MixedKindConflict", "one class pair carries opposing directed records",
                         {kinds[0].witness.first, kinds[0].witness.second, ck.witness.first,
                          ck.witness.second});
    }
    std::size_t expected = g.classes[ca].size() * g.classes[cb].size();
    if (kinds.size() != expected) {
      // find a missing cross pair as the second witness
      std::set<std::pair<std::string, std::string>> present;
      for (const auto& ck : kinds) {
        auto w = ck.witness;
        if (w.second < w.first) std::swap(w.first, w.second);
        present.insert(w);
      }
      for (const auto& x : g.classes[ca])
        for (const auto& y : g.classes[cb]) {
          auto p = std::minmax(x, y);
          if (!present.count({p.first, p.second}))
            throw_validation("ClassInconsistency",
                             "one-relation not constant across the class pair",
                             {kinds[0].witness.first, kinds[0].witness.second, p.first, p.second});
        }
    }
  }

  for (auto& [key, kinds] : cross) {
    QuotientArc arc;
    arc.kind = kinds[0].kind;
    if (arc.kind == PairKind::DirOne) {
      arc.a = kinds[0].forward ? key.first : key.second;
      arc.b = kinds[0].forward ? key.second : key.first;
    } else {
      arc.a = key.first;
      arc.b = key.second;
    }
    g.arcs.push_back(arc);
  }

  // forest check on the underlying undirected class graph
  {
    UnionFind cf(k);
    for (const auto& a : g.arcs)
      if (!cf.join(a.a, a.b)) {
        // recover a cycle through this arc for the witness
        std::vector<std::vector<int>> adj(k);
        for (const auto& e : g.arcs)
          if (&e != &a) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
          }
        std::vector<int> parent(k, -2);
        std::deque<int> queue{a.a};
        parent[a.a] = -1;
        while (!queue.empty()) {
          int v = queue.front();
          queue.pop_front();
          for (int w : adj[v])
            if (parent[w] == -2) {
              parent[w] = v;
              queue.push_back(w);
            }
        }
        std::vector<std::string> cycle;
        for (int v = a.b; v != -1; v = parent[v]) cycle.push_back(g.rep(v));
        std::sort(cycle.begin(), cycle.end());
        throw_validation("NotForest", "single-1 classes contain a cycle", cycle);
      }
    std::map<int, std::vector<int>> comps;
    for (int c = 0; c < k; ++c) comps[cf.find(c)].push_back(c);
    for (auto& [root, members] : comps) {
      (void)root;
      g.components.push_back(members);
    }
  }

  // at most one in-pointing directed arc per class (Cor 5.5.1)
  {
    std::vector<int> in_from(k, -1);
    for (const auto& a : g.arcs) {
      if (a.kind != PairKind::DirOne) continue;
      if (in_from[a.b] >= 0)
        throw_validation("InPointerConflict", "two directed arcs point into one class",
                         {g.rep(in_from[a.b]), g.rep(a.a), g.rep(a.b)});
      in_from[a.b] = a.a;
    }
  }
  return g;
}

namespace {

// Component-local view: class ids, undirected adjacency, directed source.
struct CompView {
  const QuotientGraph& g;
  std::vector<int> classes;
  std::map<int, std::vector<int>> adj;

  CompView(const QuotientGraph& g_, int comp) : g(g_), classes(g_.components.at(comp)) {
    for (int c : classes) adj[c] = {};
    for (const auto& a : g.arcs) {
      if (!adj.count(a.a) || !adj.count(a.b)) continue;
      adj[a.a].push_back(a.b);
      adj[a.b].push_back(a.a);
    }
    for (auto& [c, nb] : adj) std::sort(nb.begin(), nb.end());
  }

  bool is_inner(int cls) const { return adj.at(cls).size() >= 2; }

  int source() const {
    std::set<int> has_in;
    for (const auto& a : g.arcs) {
      if (!adj.count(a.a)) continue;
      if (a.kind == PairKind::DirOne)
        has_in.insert(a.b);
      else
        throw_internal("Unoriented", "directed construction on an unoriented component");
    }
    for (int c : classes)
      if (!has_in.count(c)) return c;
    throw_validation("NoSource", "directed component has no source class",
                     {g.rep(classes.front())});
  }
};

// Shared Algorithm 1 body writing into a caller-supplied builder.
// Returns leaf vertex per class, primed copy per primed class, the canonical
// undirected attachment vertex, and the directed source copy.
struct BuiltComponent {
  std::map<int, int> leaf_of;    // class -> leaf vertex
  std::map<int, int> primed_of;  // class -> primed interior vertex
  int undirected_attach = -1;    // q_i' for Algorithm 2
  int source_copy = -1;          // v_Q' for directed rooting
};

BuiltComponent append_component(TreeBuilder& tb, std::map<Edge, int>& labels,
                                const QuotientGraph& g, int comp, bool directed,
                                bool forest_member) {
  CompView view(g, comp);
  BuiltComponent out;

  if (view.classes.size() == 1) {
    int cls = view.classes.front();
    out.leaf_of[cls] = tb.add_vertex(g.rep(cls));
    out.undirected_attach = out.leaf_of[cls];
    return out;
  }

  int source = directed ? view.source() : -1;

  if (view.classes.size() == 2 && !forest_member && !directed) {
    // a lone undirected edge component stays a single 1-edge
    int a = view.classes[0], b = view.classes[1];
    out.leaf_of[a] = tb.add_vertex(g.rep(a));
    out.leaf_of[b] = tb.add_vertex(g.rep(b));
    tb.add_edge(out.leaf_of[a], out.leaf_of[b]);
    labels[make_edge(out.leaf_of[a], out.leaf_of[b])] = 1;
    return out;
  }

  // primed classes: inner vertices of the component tree, the source when
  // directed, and (for forest members) the subdividing vertex of an
  // undirected edge component
  std::set<int> primed;
  for (int c : view.classes)
    if (view.is_inner(c)) primed.insert(c);
  if (directed) primed.insert(source);
  if (!directed && view.classes.size() == 2 && forest_member)
    primed.insert(view.classes.front());  // 0-edge to the lexicographically smaller endpoint

  for (int c : view.classes) out.leaf_of[c] = tb.add_vertex(g.rep(c));
  for (int c : primed) {
    int p = tb.add_vertex();
    out.primed_of[c] = p;
    tb.add_edge(p, out.leaf_of[c]);
    labels[make_edge(p, out.leaf_of[c])] = 0;
  }
  auto anchor = [&](int cls) {
    auto it = out.primed_of.find(cls);
    return it != out.primed_of.end() ? it->second : out.leaf_of.at(cls);
  };
  for (int c : view.classes)
    for (int d : view.adj.at(c))
      if (c < d) {
        tb.add_edge(anchor(c), anchor(d));
        labels[make_edge(anchor(c), anchor(d))] = 1;
      }

  if (directed) out.source_copy = out.primed_of.at(source);
  if (directed) {
    out.undirected_attach = out.source_copy;
  } else {
    // primed copy of the smallest primed class
    out.undirected_attach = out.primed_of.begin()->second;
  }
  return out;
}

EdgeLabeledTree finish(TreeBuilder& tb, std::map<Edge, int> labels) {
  return make_edge_labeled(tb.build(), std::move(labels));
}

}  // namespace

EdgeLabeledTree minimally_resolved_component(const QuotientGraph& g, int comp, bool directed) {
  TreeBuilder tb;
  std::map<Edge, int> labels;
  BuiltComponent bc = append_component(tb, labels, g, comp, directed, false);
  if (directed) {
    if (bc.source_copy >= 0)
      tb.set_root(bc.source_copy);
    else if (g.components.at(comp).size() == 1)
      tb.set_root(bc.leaf_of.begin()->second);  // single vertex: inner vertex and leaf
  }
  return finish(tb, std::move(labels));
}

ForestResult minimally_resolved_forest(const QuotientGraph& g, RootChoice rc) {
  if (g.mode == RelationMode::Mixed)
    throw_internal("Unoriented", "orient a mixed quotient before reconstructing");
  bool directed = g.mode == RelationMode::Directed;
  if (!directed && rc.kind != RootChoice::Unrooted)
    throw_validation("InvalidRootChoice", "a symmetric relation has no root choice");

  const int ncomp = static_cast<int>(g.components.size());
  if (ncomp == 1) {
    if (rc.kind == RootChoice::Hub)
      throw_validation("InvalidRootChoice", "connected quotient has no hub vertex");
    if (rc.kind == RootChoice::Source && rc.component != 0)
      throw_validation("InvalidRootChoice", "no such component");
    return {minimally_resolved_component(g, 0, directed), false};
  }

  TreeBuilder tb;
  std::map<Edge, int> labels;
  int hub = tb.add_vertex();
  std::vector<BuiltComponent> built;
  for (int i = 0; i < ncomp; ++i) {
    built.push_back(append_component(tb, labels, g, i, directed, true));
    int attach = built.back().undirected_attach;
    tb.add_edge(hub, attach);
    labels[make_edge(hub, attach)] = 1;
  }
  if (directed) {
    if (rc.kind == RootChoice::Source) {
      if (rc.component < 0 || rc.component >= ncomp)
        throw_validation("InvalidRootChoice", "no such component");
      int sc = built[rc.component].source_copy;
      if (sc < 0)
        throw_validation("InvalidRootChoice",
                         "a single-class component cannot carry the root");
      tb.set_root(sc);
    } else {
      tb.set_root(hub);  // default and explicit Hub
    }
  }
  return {finish(tb, std::move(labels)), ncomp == 2};
}

EdgeLabeledTree expand_classes(const EdgeLabeledTree& t,
                               const std::vector<std::vector<std::string>>& classes) {
  // single-vertex tree: the lone representative expands to an all-0 tree
  if (t.tree.vertex_count() == 1) {
    const std::string& rep = t.tree.taxon(0);
    for (const auto& cls : classes) {
      if (cls.empty() || cls.front() != rep) continue;
      if (cls.size() == 1) return t;
      TreeBuilder tb;
      std::map<Edge, int> labels;
      if (cls.size() == 2) {
        int a = tb.add_vertex(cls[0]);
        int b = tb.add_vertex(cls[1]);
        tb.add_edge(a, b);
        labels[make_edge(a, b)] = 0;
      } else {
        int hub = tb.add_vertex();
        for (const auto& m : cls) {
          int v = tb.add_vertex(m);
          tb.add_edge(hub, v);
          labels[make_edge(hub, v)] = 0;
        }
      }
      return make_edge_labeled(tb.build(), std::move(labels));
    }
    throw_validation("UnknownRepresentative", "no class is represented by '" + rep + "'", {rep});
  }

  TreeBuilder tb;
  std::map<Edge, int> labels;
  const int n = t.tree.vertex_count();
  std::vector<int> id(n, -1);

  // representatives whose class has k >= 2 and whose pendant edge is labeled
  // >= 1 become hubs; all other vertices are copied
  std::map<int, const std::vector<std::string>*> expand_at;  // old leaf vertex -> class
  for (const auto& cls : classes) {
    if (cls.size() < 2) continue;
    int v;
    try {
      v = t.tree.vertex_of(cls.front());
    } catch (const Error&) {
      throw_validation("UnknownRepresentative",
                       "representative '" + cls.front() + "' is not a leaf of the tree",
                       {cls.front()});
    }
    expand_at[v] = &cls;
  }

  for (int v = 0; v < n; ++v) {
    auto it = expand_at.find(v);
    if (it == expand_at.end()) {
      id[v] = tb.add_vertex(t.tree.taxon(v));
      continue;
    }
    int w = t.tree.neighbors(v).front();
    int lab = t.label(v, w);
    if (lab == 0)
      id[v] = tb.add_vertex(t.tree.taxon(v));  // stays; members join at w below
    else
      id[v] = tb.add_vertex();  // becomes the class hub
  }
  for (const auto& e : t.tree.edges()) {
    tb.add_edge(id[e.first], id[e.second]);
    labels[make_edge(id[e.first], id[e.second])] = t.label(e);
  }
  for (auto& [v, cls] : expand_at) {
    int w = t.tree.neighbors(v).front();
    int lab = t.label(v, w);
    int attach = lab == 0 ? id[w] : id[v];
    for (std::size_t m = 0; m < cls->size(); ++m) {
      if (lab == 0 && m == 0) continue;  // representative already present
      int leaf = tb.add_vertex((*cls)[m]);
      tb.add_edge(attach, leaf);
      labels[make_edge(attach, leaf)] = 0;
    }
  }
  if (t.tree.rooted()) tb.set_root(id[t.tree.root()]);
  return make_edge_labeled(tb.build(), std::move(labels));
}

Reconstruction reconstruct_relation(const EventRelation& r, RootChoice rc) {
  QuotientGraph g = build_quotient(r);
  if (g.mode == RelationMode::Mixed) {
    if (rc.kind != RootChoice::Unrooted)
      throw_validation("InvalidRootChoice",
                       "mixed relations are rooted via admissible_rooted_trees");
    // underlying undirected reconstruction
    QuotientGraph und = g;
    und.mode = RelationMode::Symmetric;
    for (auto& a : und.arcs) {
      a.kind = PairKind::SymOne;
      if (a.b < a.a) std::swap(a.a, a.b);
    }
    ForestResult fr = minimally_resolved_forest(und, {});
    return {expand_classes(fr.tree, und.classes), fr.degree2_hub};
  }
  ForestResult fr = minimally_resolved_forest(g, rc);
  return {expand_classes(fr.tree, g.classes), fr.degree2_hub};
}

bool least_resolved_structure(const EdgeLabeledTree& t) {
  for (const auto& [e, lab] : t.labels) {
    if (lab == 0 && !t.tree.has_taxon(e.first) && !t.tree.has_taxon(e.second)) return false;
  }
  for (int v = 0; v < t.tree.vertex_count(); ++v) {
    if (t.tree.has_taxon(v) || t.tree.vertex_count() == 1) continue;
    int zeros = 0;
    for (int w : t.tree.neighbors(v))
      if (t.label(v, w) == 0) ++zeros;
    if (zeros != 1) return false;
  }
  return true;
}

bool is_least_resolved(const EdgeLabeledTree& t, const EventRelation& r) {
  if (!explains(t, r))
    throw_validation("NotExplaining", "is_least_resolved expects an explaining tree");
  for (const auto& [e, lab] : t.labels) {
    (void)lab;
    if (t.tree.has_taxon(e.first) || t.tree.has_taxon(e.second)) continue;
    if (explains(contract_edge(t, e), r)) return false;
  }
  return true;
}

// ---- binary enumeration ----

std::uint64_t unrooted_binary_count(int k) {
  if (k <= 3) return 1;
  std::uint64_t out = 1;
  for (int i = 4; i <= k; ++i) out *= static_cast<std::uint64_t>(2 * i - 5);
  return out;
}

std::uint64_t binary_count_formula(const EdgeLabeledTree& t) {
  std::uint64_t total = 1;
  for (int v = 0; v < t.tree.vertex_count(); ++v) {
    if (t.tree.has_taxon(v)) continue;
    int k = t.tree.degree(v);
    if (k <= 3) continue;
    int zeros = 0;
    for (int w : t.tree.neighbors(v))
      if (t.label(v, w) == 0) ++zeros;
    if (zeros > 1) throw_internal("Formula", "inner vertex with two 0-edges");
    total *= unrooted_binary_count(k);
    if (zeros == 0) total <<= (k - 3);  // type (a): free interior labels
  }
  return total;
}

namespace {

// Unrooted binary topologies over k leaf slots 0..k-1; internal nodes get
// ids >= k. Generated by stepwise leaf insertion; all results are distinct.
struct LocalTopology {
  std::vector<std::pair<int, int>> edges;
  int nodes;  // total node count (slots + internals)
};

std::vector<LocalTopology> local_binary_topologies(int k) {
  std::vector<LocalTopology> cur;
  cur.push_back({{{0, k}, {1, k}, {2, k}}, k + 1});
  for (int s = 3; s < k; ++s) {
    std::vector<LocalTopology> next;
    for (const auto& t : cur)
      for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
        LocalTopology nt = t;
        auto [a, b] = nt.edges[ei];
        int m = nt.nodes++;
        nt.edges[ei] = {a, m};
        nt.edges.push_back({b, m});
        nt.edges.push_back({s, m});
        next.push_back(std::move(nt));
      }
    cur = std::move(next);
  }
  return cur;
}

// Replace high-degree vertex v0 by one local topology with interior labels.
EdgeLabeledTree splice(const EdgeLabeledTree& t, int v0, const std::vector<int>& slots,
                       const LocalTopology& topo, const std::map<std::pair<int, int>, int>& ilab) {
  const int k = static_cast<int>(slots.size());
  TreeBuilder tb;
  std::map<Edge, int> labels;
  std::vector<int> id(t.tree.vertex_count(), -1);
  for (int v = 0; v < t.tree.vertex_count(); ++v)
    if (v != v0) id[v] = tb.add_vertex(t.tree.taxon(v));
  for (const auto& e : t.tree.edges()) {
    if (e.first == v0 || e.second == v0) continue;
    tb.add_edge(id[e.first], id[e.second]);
    labels[make_edge(id[e.first], id[e.second])] = t.label(e);
  }
  std::vector<int> node_id(topo.nodes, -1);
  for (int s = 0; s < k; ++s) node_id[s] = id[slots[s]];
  for (int m = k; m < topo.nodes; ++m) node_id[m] = tb.add_vertex();
  for (const auto& [a, b] : topo.edges) {
    tb.add_edge(node_id[a], node_id[b]);
    int lab;
    if (a < k || b < k) {
      int slot = a < k ? a : b;
      lab = t.label(v0, slots[slot]);  // terminal edges keep the star's labels
    } else {
      lab = ilab.at(std::minmax(a, b));
    }
    labels[make_edge(node_id[a], node_id[b])] = lab;
  }
  return make_edge_labeled(tb.build(), std::move(labels));
}

void expand_high_degree(const EdgeLabeledTree& t, std::vector<EdgeLabeledTree>& out) {
  int v0 = -1;
  for (int v = 0; v < t.tree.vertex_count(); ++v)
    if (!t.tree.has_taxon(v) && t.tree.degree(v) > 3) {
      v0 = v;
      break;
    }
  if (v0 < 0) {
    out.push_back(t);
    return;
  }
  std::vector<int> slots = t.tree.neighbors(v0);
  const int k = static_cast<int>(slots.size());
  int zero_slot = -1;
  for (int s = 0; s < k; ++s)
    if (t.label(v0, slots[s]) == 0) {
      if (zero_slot >= 0) throw_internal("Expansion", "inner vertex with two 0-edges");
      zero_slot = s;
    }

  // slots whose branch reaches a leaf one event away from the 0-leaf; the
  // interior path to them must stay silent (step 4(i))
  std::set<int> constrained;
  if (zero_slot >= 0) {
    int vj = slots[zero_slot];
    for (int leaf : t.tree.leaf_vertices()) {
      if (leaf == vj) continue;
      if (t.path_sum(vj, leaf) != 1) continue;
      auto pv = t.tree.path_vertices(vj, leaf);  // vj, v0, branch, ...
      if (pv.size() < 3 || pv[1] != v0) continue;
      for (int s = 0; s < k; ++s)
        if (slots[s] == pv[2]) constrained.insert(s);
    }
  }

  for (const auto& topo : local_binary_topologies(k)) {
    // adjacency inside the topology for path marking
    std::vector<std::vector<int>> adj(topo.nodes);
    for (auto [a, b] : topo.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    auto topo_path_edges = [&](int from, int to) {
      std::vector<int> parent(topo.nodes, -2);
      std::deque<int> queue{from};
      parent[from] = -1;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : adj[v])
          if (parent[w] == -2) {
            parent[w] = v;
            queue.push_back(w);
          }
      }
      std::vector<std::pair<int, int>> es;
      for (int v = to; parent[v] != -1; v = parent[v]) es.push_back(std::minmax(v, parent[v]));
      return es;
    };

    std::vector<std::pair<int, int>> interior;
    for (auto [a, b] : topo.edges)
      if (a >= k && b >= k) interior.push_back(std::minmax(a, b));
    std::sort(interior.begin(), interior.end());

    std::map<std::pair<int, int>, int> forced;  // interior edge -> 0
    if (zero_slot >= 0) {
      for (int s : constrained)
        for (auto e : topo_path_edges(zero_slot, s))
          if (e.first >= k) forced[e] = 0;
    }
    std::vector<std::pair<int, int>> free_edges;
    for (const auto& e : interior)
      if (!forced.count(e)) free_edges.push_back(e);

    const std::uint64_t combos = std::uint64_t{1} << free_edges.size();
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      std::map<std::pair<int, int>, int> ilab = forced;
      for (std::size_t i = 0; i < free_edges.size(); ++i)
        ilab[free_edges[i]] = (mask >> i) & 1 ? 1 : 0;
      expand_high_degree(splice(t, v0, slots, topo, ilab), out);
    }
  }
}

}  // namespace

namespace {

// The full set of least resolved trees that explain a discrete symmetric
// relation. Least resolved trees carry no interior 0-edge (Lemma 5.4.4), so
// they are exactly the phylogenetic shapes with all-1 interior edges and a
// 0/1 terminal labeling that derives the relation and leaves no interior
// edge uncrossed by a one- or two-event pair.
std::vector<EdgeLabeledTree> least_resolved_family(const EventRelation& r) {
  const auto& taxa = r.taxa();
  const int n = static_cast<int>(taxa.size());
  std::vector<EdgeLabeledTree> out;

  if (n == 1) {
    TreeBuilder tb;
    tb.add_vertex(taxa[0]);
    out.push_back(make_edge_labeled(tb.build(), {}));
    return out;
  }
  if (n == 2) {
    TreeBuilder tb;
    int a = tb.add_vertex(taxa[0]);
    int b = tb.add_vertex(taxa[1]);
    tb.add_edge(a, b);
    std::map<Edge, int> labels{{make_edge(a, b), 1}};
    out.push_back(make_edge_labeled(tb.build(), std::move(labels)));
    return out;  // callers reach this only for the connected single-edge quotient
  }

  std::vector<std::vector<char>> related(n, std::vector<char>(n, 0));
  for (const auto& rec : r.records()) {
    int i = static_cast<int>(std::lower_bound(taxa.begin(), taxa.end(), rec.a) - taxa.begin());
    int j = static_cast<int>(std::lower_bound(taxa.begin(), taxa.end(), rec.b) - taxa.begin());
    related[i][j] = related[j][i] = 1;
  }

  enumerate_phylo_trees(taxa, [&](const Tree& shape) {
    std::vector<int> leaf(n);
    for (int i = 0; i < n; ++i) leaf[i] = shape.vertex_of(taxa[i]);
    // pairwise leaf paths; every edge on them is identified by index
    auto es = shape.edges();
    std::map<Edge, int> edge_index;
    for (std::size_t e = 0; e < es.size(); ++e) edge_index[es[e]] = static_cast<int>(e);
    std::vector<std::vector<std::vector<int>>> path_edges(n, std::vector<std::vector<int>>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (const auto& e : shape.path(leaf[i], leaf[j]))
          path_edges[i][j].push_back(edge_index[e]);
    std::vector<char> interior(es.size(), 0);
    std::vector<int> interior_ids;
    for (std::size_t e = 0; e < es.size(); ++e)
      if (!shape.has_taxon(es[e].first) && !shape.has_taxon(es[e].second)) {
        interior[e] = 1;
        interior_ids.push_back(static_cast<int>(e));
      }

    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
      auto lam = [&](int i) { return (mask >> i) & 1 ? 1 : 0; };
      bool ok = true;
      std::vector<char> witnessed(es.size(), 0);
      for (int i = 0; i < n && ok; ++i)
        for (int j = i + 1; j < n && ok; ++j) {
          int interior_len = static_cast<int>(path_edges[i][j].size()) - 2;
          int sum = lam(i) + lam(j) + interior_len;
          if (related[i][j] ? sum != 1 : sum < 2) ok = false;
          if (ok && sum <= 2)
            for (int e : path_edges[i][j]) witnessed[e] = 1;
        }
      if (!ok) continue;
      for (int e : interior_ids)
        if (!witnessed[e]) ok = false;  // contractible: not least resolved
      if (!ok) continue;
      std::map<Edge, int> labels;
      for (std::size_t e = 0; e < es.size(); ++e) labels[es[e]] = interior[e] ? 1 : 0;
      for (int i = 0; i < n; ++i) {
        const auto& nb = shape.neighbors(leaf[i]);
        labels[make_edge(leaf[i], nb.front())] = lam(i);
      }
      out.push_back(make_edge_labeled(shape, std::move(labels)));
    }
  });
  return out;
}

// Two-component relaxed generators: the Algorithm-2 trees with the
// degree-2 hub (attachment choices and edge-component orientations).
std::vector<EdgeLabeledTree> relaxed_two_component_family(const QuotientGraph& g) {
  struct Variant {
    int attach_class;
    int flip;
    int kind;  // 0 singleton, 1 edge, 2 larger
  };
  std::vector<std::vector<Variant>> options(2);
  for (int i = 0; i < 2; ++i) {
    CompView view(g, i);
    if (view.classes.size() == 1)
      options[i].push_back({view.classes.front(), 0, 0});
    else if (view.classes.size() == 2) {
      options[i].push_back({-1, 0, 1});
      options[i].push_back({-1, 1, 1});
    } else {
      for (int c : view.classes)
        if (view.is_inner(c)) options[i].push_back({c, 0, 2});
    }
  }
  std::vector<EdgeLabeledTree> out;
  for (const auto& o0 : options[0])
    for (const auto& o1 : options[1]) {
      TreeBuilder tb;
      std::map<Edge, int> labels;
      int hub = tb.add_vertex();
      for (int i = 0; i < 2; ++i) {
        const Variant& opt = i == 0 ? o0 : o1;
        CompView view(g, i);
        int attach = -1;
        if (opt.kind == 0) {
          attach = tb.add_vertex(g.rep(opt.attach_class));
        } else if (opt.kind == 1) {
          int a = view.classes[0], b = view.classes[1];
          if (opt.flip) std::swap(a, b);
          int x = tb.add_vertex();
          int la = tb.add_vertex(g.rep(a));
          int lb = tb.add_vertex(g.rep(b));
          tb.add_edge(x, la);
          labels[make_edge(x, la)] = 0;
          tb.add_edge(x, lb);
          labels[make_edge(x, lb)] = 1;
          attach = x;
        } else {
          BuiltComponent bc = append_component(tb, labels, g, i, false, true);
          attach = bc.primed_of.at(opt.attach_class);
        }
        tb.add_edge(hub, attach);
        labels[make_edge(hub, attach)] = 1;
      }
      out.push_back(finish(tb, std::move(labels)));
    }
  return out;
}

}  // namespace

BinaryEnumeration enumerate_binary(const EventRelation& r, bool allow_degree2_root) {
  if (r.mode() != RelationMode::Symmetric)
    throw_validation("BadMode", "binary enumeration handles symmetric relations");
  QuotientGraph g = build_quotient(r);
  if (!g.discrete())
    throw_validation("NonDiscreteZero",
                     "binary enumeration requires a discrete zero relation (quotient only)");

  BinaryEnumeration out;
  const int ncomp = static_cast<int>(g.components.size());
  std::vector<EdgeLabeledTree> generators;
  if (ncomp == 2) {
    out.two_components = true;
    if (!allow_degree2_root) return out;
    generators = relaxed_two_component_family(g);
  } else {
    generators = least_resolved_family(r);
  }

  std::map<std::string, EdgeLabeledTree> dedup;
  for (const auto& gen : generators) {
    std::vector<EdgeLabeledTree> expanded;
    expand_high_degree(gen, expanded);
    out.least_resolved.push_back(gen);
    out.per_tree_counts.push_back(expanded.size());
    for (auto& t : expanded) dedup.emplace(canonical_form(t), std::move(t));
  }
  for (auto& [key, t] : dedup) {
    (void)key;
    out.trees.push_back(std::move(t));
  }
  return out;
}

// ---- mixed relations ----

std::vector<int> central_vertices(const QuotientGraph& g, int comp) {
  CompView view(g, comp);
  std::vector<int> out;
  for (int v : view.classes) {
    // orient the component tree away from v and demand every arc agree
    std::map<int, int> parent;
    std::deque<int> queue{v};
    parent[v] = -1;
    bool central = true;
    while (!queue.empty() && central) {
      int c = queue.front();
      queue.pop_front();
      for (int d : view.adj.at(c)) {
        if (parent.count(d)) continue;
        parent[d] = c;
        queue.push_back(d);
        const QuotientArc* arc = g.arc_between(c, d);
        if (arc->kind == PairKind::DirOne && !(arc->a == c && arc->b == d)) central = false;
      }
    }
    if (central) out.push_back(v);
  }
  return out;
}

namespace {

// Re-make a quotient with every arc directed away from the chosen central
// vertex of its component.
QuotientGraph orient_quotient(const QuotientGraph& g, const std::vector<int>& central_of_comp) {
  QuotientGraph out = g;
  out.mode = RelationMode::Directed;
  std::map<std::pair<int, int>, std::pair<int, int>> directed;  // unordered -> (from,to)
  for (std::size_t i = 0; i < g.components.size(); ++i) {
    CompView view(g, static_cast<int>(i));
    int v = central_of_comp[i];
    std::map<int, int> parent;
    std::deque<int> queue{v};
    parent[v] = -1;
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      for (int d : view.adj.at(c)) {
        if (parent.count(d)) continue;
        parent[d] = c;
        queue.push_back(d);
        directed[std::minmax(c, d)] = {c, d};
      }
    }
  }
  for (auto& a : out.arcs) {
    auto [from, to] = directed.at(std::minmax(a.a, a.b));
    if (a.kind == PairKind::DirOne && !(a.a == from && a.b == to))
      throw_internal("Orientation", "arc disagrees with a central vertex orientation");
    a.a = from;
    a.b = to;
    a.kind = PairKind::DirOne;
  }
  return out;
}

}  // namespace

AdmissibleResult admissible_rooted_trees(const EventRelation& r) {
  if (r.mode() == RelationMode::Symmetric)
    throw_validation("BadMode", "admissible roots need directional information");
  QuotientGraph g = build_quotient(r);
  const int ncomp = static_cast<int>(g.components.size());

  AdmissibleResult out;
  std::vector<std::vector<int>> centrals(ncomp);
  for (int i = 0; i < ncomp; ++i) {
    centrals[i] = central_vertices(g, i);
    if (centrals[i].empty()) out.components_without_central.push_back(i);
  }
  if (!out.components_without_central.empty()) return out;

  auto emit = [&](const std::vector<int>& choice, RootChoice rc, const std::string& desc) {
    QuotientGraph oriented = orient_quotient(g, choice);
    ForestResult fr = minimally_resolved_forest(oriented, rc);
    out.trees.push_back({desc, expand_classes(fr.tree, oriented.classes)});
  };

  std::vector<int> defaults(ncomp);
  for (int i = 0; i < ncomp; ++i) defaults[i] = centrals[i].front();

  for (int i = 0; i < ncomp; ++i) {
    if (g.components[i].size() < 2) continue;  // a lone leaf cannot carry the root
    for (int c : centrals[i]) {
      std::vector<int> choice = defaults;
      choice[i] = c;
      RootChoice rc;
      rc.kind = RootChoice::Source;
      rc.component = i;
      emit(choice, rc, std::to_string(i + 1) + ":" + g.rep(c));
    }
  }
  if (ncomp > 1) {
    RootChoice rc;
    rc.kind = RootChoice::Hub;
    emit(defaults, rc, "zT");
  }
  return out;
}

}  // namespace phylorel
