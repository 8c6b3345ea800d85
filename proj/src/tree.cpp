#include "phylorel/tree.hpp"

#include <algorithm>
#include <deque>

namespace phylorel {

bool is_valid_taxon_token(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '.' || c == '-';
    if (!ok) return false;
  }
  return true;
}

const std::vector<int>& Tree::neighbors(int v) const {
  if (v < 0 || v >= vertex_count()) throw_internal("UnknownVertex", "vertex id out of range");
  return adj_[v];
}

int Tree::root() const {
  if (!root_) throw_validation("NotRooted", "operation requires a rooted tree");
  return *root_;
}

int Tree::vertex_of(const std::string& taxon) const {
  auto it = taxon_vertex_.find(taxon);
  if (it == taxon_vertex_.end())
    throw_validation("UnknownTaxon", "taxon '" + taxon + "' not in tree", {taxon});
  return it->second;
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  for (int v = 0; v < vertex_count(); ++v)
    for (int w : adj_[v])
      if (v < w) out.emplace_back(v, w);
  return out;
}

std::vector<int> Tree::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (!has_taxon(v)) out.push_back(v);
  if (out.empty() && vertex_count() == 1) out.push_back(0);  // single vertex: inner and leaf
  return out;
}

std::vector<int> Tree::leaf_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (has_taxon(v)) out.push_back(v);
  return out;
}

bool Tree::is_phylogenetic() const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (degree(v) == 2 && !(root_ && *root_ == v)) return false;
  }
  return true;
}

bool Tree::is_binary() const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (has_taxon(v)) continue;
    int d = degree(v);
    if (d == 3) continue;
    if (root_ && *root_ == v && d == 2) continue;
    return false;
  }
  return true;
}

std::vector<int> Tree::parents_from(int from) const {
  std::vector<int> parent(vertex_count(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v])
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
  }
  return parent;
}

std::vector<int> Tree::path_vertices(int u, int v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count())
    throw_internal("UnknownVertex", "vertex id out of range");
  auto parent = parents_from(u);
  std::vector<int> rev;
  for (int w = v; w != -1; w = parent[w]) rev.push_back(w);
  std::reverse(rev.begin(), rev.end());
  return rev;  // starts at u, ends at v
}

std::vector<Edge> Tree::path(int u, int v) const {
  auto vs = path_vertices(u, v);
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) out.push_back(make_edge(vs[i], vs[i + 1]));
  return out;
}

int Tree::median(int x, int y, int z) const {
  // med is the unique vertex on P(x,y) that also lies on P(x,z); equivalently
  // the last common prefix vertex of the two paths from x.
  auto pxy = path_vertices(x, y);
  auto pxz = path_vertices(x, z);
  std::size_t i = 0;
  while (i < pxy.size() && i < pxz.size() && pxy[i] == pxz[i]) ++i;
  return pxy[i - 1];
}

int Tree::median(const std::string& x, const std::string& y, const std::string& z) const {
  return median(vertex_of(x), vertex_of(y), vertex_of(z));
}

int Tree::lca_vertices(const std::vector<int>& vs) const {
  if (vs.empty()) throw_internal("EmptySubset", "lca of an empty set");
  int r = root();
  auto parent = parents_from(r);
  std::vector<int> depth(vertex_count(), 0);
  for (int v = 0; v < vertex_count(); ++v) {
    int d = 0;
    for (int w = v; parent[w] != -1; w = parent[w]) ++d;
    depth[v] = d;
  }
  int cur = vs[0];
  for (std::size_t i = 1; i < vs.size(); ++i) {
    int a = cur, b = vs[i];
    while (depth[a] > depth[b]) a = parent[a];
    while (depth[b] > depth[a]) b = parent[b];
    while (a != b) {
      a = parent[a];
      b = parent[b];
    }
    cur = a;
  }
  return cur;
}

int Tree::lca(const std::vector<std::string>& taxa) const {
  if (taxa.empty()) throw_validation("EmptySubset", "lca of an empty taxa set");
  std::vector<int> vs;
  vs.reserve(taxa.size());
  for (const auto& t : taxa) vs.push_back(vertex_of(t));
  return lca_vertices(vs);
}

int TreeBuilder::add_vertex(std::string taxon) {
  taxon_of_.push_back(std::move(taxon));
  return static_cast<int>(taxon_of_.size()) - 1;
}

void TreeBuilder::add_edge(int u, int v) { edges_.emplace_back(u, v); }

Tree TreeBuilder::build() const {
  const int n = static_cast<int>(taxon_of_.size());
  if (n == 0) throw_internal("EmptyTree", "a tree has at least one vertex");
  Tree t;
  t.adj_.assign(n, {});
  t.taxon_of_ = taxon_of_;
  if (static_cast<int>(edges_.size()) != n - 1)
    throw_internal("NotATree", "edge count must be vertex count - 1");
  for (auto [u, v] : edges_) {
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw_internal("NotATree", "bad edge endpoints");
    t.adj_[u].push_back(v);
    t.adj_[v].push_back(u);
  }
  for (auto& nb : t.adj_) std::sort(nb.begin(), nb.end());
  // connectivity (acyclicity follows from edge count)
  {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int cnt = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : t.adj_[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++cnt;
          queue.push_back(w);
        }
    }
    if (cnt != n) throw_internal("NotATree", "graph is disconnected");
  }
  for (int v = 0; v < n; ++v) {
    bool leaf = t.adj_[v].size() <= 1;
    if (n == 1) leaf = true;
    if (leaf && t.taxon_of_[v].empty())
      throw_internal("BareLeaf", "degree-1 vertex without a taxon");
    if (!leaf && !t.taxon_of_[v].empty())
      throw_internal("InteriorTaxon", "taxon on an interior vertex");
    if (!t.taxon_of_[v].empty()) {
      if (!is_valid_taxon_token(t.taxon_of_[v]))
        throw_syntax("BadTaxon", "invalid taxon token '" + t.taxon_of_[v] + "'");
      auto [it, fresh] = t.taxon_vertex_.emplace(t.taxon_of_[v], v);
      (void)it;
      if (!fresh)
        throw_syntax("DuplicateTaxon", "taxon '" + t.taxon_of_[v] + "' appears twice",
                     {t.taxon_of_[v]});
    }
  }
  if (root_) {
    if (*root_ < 0 || *root_ >= n) throw_internal("UnknownVertex", "root id out of range");
    if (!t.taxon_of_[*root_].empty() && n > 1)
      throw_syntax("BadRoot", "root must be an inner vertex");
    t.root_ = *root_;
  }
  for (auto& [name, v] : t.taxon_vertex_) {
    (void)v;
    t.taxa_.push_back(name);
  }
  return t;
}

int EdgeLabeledTree::label(const Edge& e) const {
  auto it = labels.find(e);
  if (it == labels.end()) throw_internal("UnknownEdge", "label lookup for a non-edge");
  return it->second;
}

long long EdgeLabeledTree::path_sum(int u, int v) const {
  long long s = 0;
  for (const auto& e : tree.path(u, v)) s += label(e);
  return s;
}

EdgeLabeledTree make_edge_labeled(Tree tree, std::map<Edge, int> labels) {
  auto es = tree.edges();
  if (labels.size() != es.size())
    throw_internal("LabelCoverage", "labels must cover exactly the edge set");
  for (const auto& e : es) {
    auto it = labels.find(e);
    if (it == labels.end()) throw_internal("LabelCoverage", "edge without a label");
    if (it->second < 0) throw_internal("BadLabel", "negative edge label");
  }
  return EdgeLabeledTree{std::move(tree), std::move(labels)};
}

const std::string& DatedTree::color(int v) const {
  auto it = colors.find(v);
  if (it == colors.end()) throw_internal("UncoloredVertex", "interior vertex without a color");
  return it->second;
}

bool DatedTree::discriminating() const {
  for (auto& [v, c] : colors)
    for (int w : tree.neighbors(v)) {
      auto it = colors.find(w);
      if (it != colors.end() && it->second == c) return false;
    }
  return true;
}

DatedTree make_dated(Tree tree, std::map<int, std::string> colors) {
  for (int v : tree.interior_vertices()) {
    if (tree.vertex_count() == 1) break;  // single vertex is a leaf too; uncolored
    if (!colors.count(v))
      throw_internal("UncoloredVertex", "every interior vertex must be colored");
  }
  for (auto& [v, c] : colors) {
    if (v < 0 || v >= tree.vertex_count() || tree.has_taxon(v))
      throw_internal("ColoredLeaf", "colors live on interior vertices only");
    if (!is_valid_taxon_token(c)) throw_syntax("BadColor", "invalid color token '" + c + "'");
  }
  return DatedTree{std::move(tree), std::move(colors)};
}

namespace {

// Shared rebuild step: compact a mutable adjacency/label structure into a
// fresh EdgeLabeledTree, dropping vertices marked dead.
struct Scratch {
  // adjacency as label map; absent vertex = dead
  std::vector<std::map<int, int>> adj;  // neighbor -> label
  std::vector<std::string> taxon;
  std::vector<char> dead;
  std::optional<int> root;

  explicit Scratch(const EdgeLabeledTree& t) {
    int n = t.tree.vertex_count();
    adj.assign(n, {});
    taxon.resize(n);
    dead.assign(n, 0);
    for (int v = 0; v < n; ++v) {
      taxon[v] = t.tree.taxon(v);
      for (int w : t.tree.neighbors(v)) adj[v][w] = t.label(v, w);
    }
    root = t.tree.root_opt();
  }

  void remove_vertex(int v) {
    for (auto& [w, lab] : adj[v]) {
      (void)lab;
      adj[w].erase(v);
    }
    adj[v].clear();
    dead[v] = 1;
  }

  // Replace a degree-2 vertex by one edge whose label is the sum.
  void suppress(int v) {
    if (adj[v].size() != 2) throw_internal("Suppress", "vertex is not degree 2");
    auto it = adj[v].begin();
    auto [a, la] = *it++;
    auto [b, lb] = *it;
    remove_vertex(v);
    adj[a][b] = la + lb;
    adj[b][a] = la + lb;
  }

  EdgeLabeledTree build() const {
    TreeBuilder tb;
    std::vector<int> id(adj.size(), -1);
    for (std::size_t v = 0; v < adj.size(); ++v)
      if (!dead[v]) id[v] = tb.add_vertex(taxon[v]);
    std::map<Edge, int> labels;
    for (std::size_t v = 0; v < adj.size(); ++v)
      for (auto& [w, lab] : adj[v])
        if (static_cast<int>(v) < w) {
          tb.add_edge(id[v], id[w]);
          labels[make_edge(id[v], id[w])] = lab;
        }
    if (root && !dead[*root]) tb.set_root(id[*root]);
    return make_edge_labeled(tb.build(), std::move(labels));
  }
};

}  // namespace

EdgeLabeledTree restrict_display(const EdgeLabeledTree& t, const std::vector<std::string>& sub) {
  if (sub.empty()) throw_validation("EmptySubset", "restriction to an empty taxa set");
  std::vector<char> keep(t.tree.vertex_count(), 0);
  for (const auto& name : sub) keep[t.tree.vertex_of(name)] = 1;

  Scratch s(t);
  if (t.tree.rooted()) {
    std::vector<int> vs;
    for (const auto& name : sub) vs.push_back(t.tree.vertex_of(name));
    s.root = t.tree.lca_vertices(vs);
  }
  // prune leaves outside the subset, then suppress degree-2 vertices
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < t.tree.vertex_count(); ++v) {
      if (s.dead[v]) continue;
      bool keep_v = keep[v] || (s.root && *s.root == v);
      if (s.adj[v].size() <= 1 && !keep_v) {
        s.remove_vertex(v);
        changed = true;
      }
    }
  }
  for (int v = 0; v < t.tree.vertex_count(); ++v) {
    if (s.dead[v] || keep[v]) continue;
    if (s.root && *s.root == v) continue;
    if (s.adj[v].size() == 2) s.suppress(v);
  }
  // A rooted restriction can leave the new root with degree 1 toward the
  // subset's subtree only when |sub| == 1; then the tree collapses to a leaf.
  if (s.root && s.adj[*s.root].size() == 1 && !keep[*s.root]) {
    int r = *s.root;
    int child = s.adj[r].begin()->first;
    s.remove_vertex(r);
    s.root = child;
    if (s.adj[child].size() == 2) { /* cannot happen: child kept or branching */
    }
  }
  return s.build();
}

EdgeLabeledTree contract_edge(const EdgeLabeledTree& t, const Edge& e) {
  int u = e.first, v = e.second;
  if (u < 0 || v < 0 || u >= t.tree.vertex_count() || v >= t.tree.vertex_count() ||
      !t.labels.count(make_edge(u, v)))
    throw_internal("UnknownEdge", "contract_edge of a non-edge");
  if (t.tree.has_taxon(u) || t.tree.has_taxon(v))
    throw_validation("TerminalEdge", "terminal edges are not contractible");
  Scratch s(t);
  // merge v into u
  s.adj[u].erase(v);
  s.adj[v].erase(u);
  for (auto& [w, lab] : s.adj[v]) {
    s.adj[u][w] = lab;
    s.adj[w].erase(v);
    s.adj[w][u] = lab;
  }
  s.adj[v].clear();
  s.dead[v] = 1;
  if (s.root && *s.root == v) s.root = u;
  return s.build();
}

EdgeLabeledTree contract_zero_interior_edges(const EdgeLabeledTree& t) {
  EdgeLabeledTree cur = t;
  for (;;) {
    bool found = false;
    for (const auto& [e, lab] : cur.labels) {
      if (lab != 0) continue;
      if (cur.tree.has_taxon(e.first) || cur.tree.has_taxon(e.second)) continue;
      cur = contract_edge(cur, e);
      found = true;
      break;
    }
    if (!found) return cur;
  }
}

}  // namespace phylorel
