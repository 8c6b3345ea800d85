#include "phylorel/oracles.hpp"

#include <algorithm>
#include <set>

#include "phylorel/codec.hpp"

namespace phylorel {

namespace {

Tree single_vertex(const std::string& taxon) {
  TreeBuilder tb;
  tb.add_vertex(taxon);
  return tb.build();
}

Tree two_taxa(const std::string& a, const std::string& b) {
  TreeBuilder tb;
  int va = tb.add_vertex(a);
  int vb = tb.add_vertex(b);
  tb.add_edge(va, vb);
  return tb.build();
}

Tree copy_with_flat_leaf(const Tree& t, int at, const std::string& taxon) {
  TreeBuilder tb;
  std::vector<int> id(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
  for (const auto& e : t.edges()) tb.add_edge(id[e.first], id[e.second]);
  int leaf = tb.add_vertex(taxon);
  tb.add_edge(id[at], leaf);
  return tb.build();
}

Tree copy_with_subdivided_leaf(const Tree& t, const Edge& e, const std::string& taxon) {
  TreeBuilder tb;
  std::vector<int> id(t.vertex_count());
  for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
  for (const auto& f : t.edges())
    if (!(f == e)) tb.add_edge(id[f.first], id[f.second]);
  int mid = tb.add_vertex();
  tb.add_edge(id[e.first], mid);
  tb.add_edge(id[e.second], mid);
  int leaf = tb.add_vertex(taxon);
  tb.add_edge(mid, leaf);
  return tb.build();
}

void check_size(std::size_t n) {
  if (n > 8) throw_validation("TooLarge", "enumeration is guarded at 8 taxa");
  if (n < 1) throw_validation("EmptySubset", "enumeration needs at least one taxon");
}

}  // namespace

void enumerate_phylo_trees(const std::vector<std::string>& taxa,
                           const std::function<void(const Tree&)>& fn) {
  std::vector<std::string> names = taxa;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  check_size(names.size());

  std::vector<Tree> level;
  if (names.size() == 1) {
    fn(single_vertex(names[0]));
    return;
  }
  level.push_back(two_taxa(names[0], names[1]));
  for (std::size_t k = 2; k < names.size(); ++k) {
    std::vector<Tree> next;
    std::set<std::string> seen;
    for (const Tree& t : level) {
      auto push = [&](Tree cand) {
        std::string key = canonical_form(cand);
        if (seen.insert(key).second) next.push_back(std::move(cand));
      };
      for (int v : t.interior_vertices())
        if (t.vertex_count() > 1) push(copy_with_flat_leaf(t, v, names[k]));
      for (const auto& e : t.edges()) push(copy_with_subdivided_leaf(t, e, names[k]));
    }
    level = std::move(next);
  }
  for (const Tree& t : level) fn(t);
}

std::vector<Tree> all_phylo_trees(const std::vector<std::string>& taxa) {
  std::vector<Tree> out;
  enumerate_phylo_trees(taxa, [&](const Tree& t) { out.push_back(t); });
  return out;
}

void enumerate_rooted_phylo_trees(const std::vector<std::string>& taxa,
                                  const std::function<void(const Tree&)>& fn) {
  enumerate_phylo_trees(taxa, [&](const Tree& t) {
    if (t.vertex_count() == 1) {
      TreeBuilder tb;
      tb.add_vertex(t.taxon(0));
      tb.set_root(0);
      fn(tb.build());
      return;
    }
    for (int r : t.interior_vertices()) {
      if (t.vertex_count() == 1) break;
      TreeBuilder tb;
      std::vector<int> id(t.vertex_count());
      for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
      for (const auto& e : t.edges()) tb.add_edge(id[e.first], id[e.second]);
      tb.set_root(id[r]);
      fn(tb.build());
    }
    for (const auto& e : t.edges()) {
      TreeBuilder tb;
      std::vector<int> id(t.vertex_count());
      for (int v = 0; v < t.vertex_count(); ++v) id[v] = tb.add_vertex(t.taxon(v));
      for (const auto& f : t.edges())
        if (!(f == e)) tb.add_edge(id[f.first], id[f.second]);
      int mid = tb.add_vertex();
      tb.add_edge(id[e.first], mid);
      tb.add_edge(id[e.second], mid);
      tb.set_root(mid);
      fn(tb.build());
    }
  });
}

void enumerate_edge_labelings(const Tree& t,
                              const std::function<void(const EdgeLabeledTree&)>& fn) {
  auto es = t.edges();
  const std::size_t m = es.size();
  if (m > 62) throw_validation("TooLarge", "too many edges to enumerate labelings");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::map<Edge, int> labels;
    for (std::size_t i = 0; i < m; ++i) labels[es[i]] = (mask >> i) & 1 ? 1 : 0;
    fn(make_edge_labeled(t, std::move(labels)));
  }
}

void enumerate_datings(const Tree& t, const std::vector<std::string>& alphabet,
                       bool discriminating_only, const std::function<void(const DatedTree&)>& fn) {
  if (alphabet.empty()) throw_validation("EmptySubset", "the alphabet must be non-empty");
  std::vector<int> inner;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (!t.has_taxon(v)) inner.push_back(v);
  if (inner.empty()) {
    fn(make_dated(t, {}));  // nothing to color
    return;
  }
  std::vector<std::size_t> pick(inner.size(), 0);
  for (;;) {
    std::map<int, std::string> colors;
    for (std::size_t i = 0; i < inner.size(); ++i) colors[inner[i]] = alphabet[pick[i]];
    DatedTree d = make_dated(t, std::move(colors));
    if (!discriminating_only || d.discriminating()) fn(d);
    int j = static_cast<int>(inner.size()) - 1;
    while (j >= 0 && ++pick[j] == alphabet.size()) pick[j--] = 0;
    if (j < 0) break;
  }
}

std::vector<EdgeLabeledTree> brute_force_explainers(const EventRelation& r, int max_vertices) {
  const auto& taxa = r.taxa();
  if (taxa.size() > 6) throw_validation("TooLarge", "brute force is guarded at 6 taxa");
  if (max_vertices > 2 * static_cast<int>(taxa.size()) + 2)
    throw_validation("TooLarge", "vertex bound exceeds 2n + 2");
  std::vector<EdgeLabeledTree> out;
  auto try_tree = [&](const Tree& t) {
    if (t.vertex_count() > max_vertices) return;
    enumerate_edge_labelings(t, [&](const EdgeLabeledTree& lt) {
      if (explains(lt, r)) out.push_back(lt);
    });
  };
  if (r.mode() == RelationMode::Symmetric)
    enumerate_phylo_trees(taxa, try_tree);
  else
    enumerate_rooted_phylo_trees(taxa, try_tree);
  return out;
}

int minimal_explainer_size(const EventRelation& r) {
  auto all = brute_force_explainers(r, 2 * static_cast<int>(r.taxa().size()) + 2);
  int best = -1;
  for (const auto& t : all) {
    int n = t.tree.vertex_count();
    if (best < 0 || n < best) best = n;
  }
  return best;
}

}  // namespace phylorel
