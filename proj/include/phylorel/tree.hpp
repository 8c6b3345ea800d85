#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phylorel/errors.hpp"

namespace phylorel {

// Undirected edge, stored with the smaller vertex id first.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// A finite tree with a distinguished taxon set on its degree-1 vertices.
// Vertex ids are internal (dense 0..n-1) and carry no identity across
// operations; taxa are the only stable names. Immutable after build().
class Tree {
 public:
  int vertex_count() const { return static_cast<int>(adj_.size()); }
  const std::vector<int>& neighbors(int v) const;
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  bool has_taxon(int v) const { return !taxon_of_[v].empty(); }
  const std::string& taxon(int v) const { return taxon_of_[v]; }
  bool is_leaf(int v) const { return has_taxon(v); }
  bool is_interior(int v) const { return !has_taxon(v) || vertex_count() == 1; }

  bool rooted() const { return root_.has_value(); }
  int root() const;
  std::optional<int> root_opt() const { return root_; }

  // Sorted taxon names.
  const std::vector<std::string>& taxa() const { return taxa_; }
  // Vertex carrying the taxon; throws UnknownTaxon.
  int vertex_of(const std::string& taxon) const;

  // All edges, sorted.
  std::vector<Edge> edges() const;
  std::vector<int> interior_vertices() const;
  std::vector<int> leaf_vertices() const;

  // No degree-2 vertex except possibly a declared root.
  bool is_phylogenetic() const;
  // Unrooted: every interior vertex has degree 3. A declared root may have
  // degree 2. Trees without interior vertices count as binary.
  bool is_binary() const;

  // Unique simple path as an edge sequence; empty iff u == v.
  std::vector<Edge> path(int u, int v) const;
  // Vertex sequence of the path, u first, v last; [u] iff u == v.
  std::vector<int> path_vertices(int u, int v) const;

  // The unique vertex on all three pairwise paths. Repeats allowed.
  int median(int x, int y, int z) const;
  int median(const std::string& x, const std::string& y, const std::string& z) const;

  // Least common ancestor of a non-empty taxa set; requires a root.
  int lca(const std::vector<std::string>& taxa) const;
  int lca_vertices(const std::vector<int>& vs) const;

  // Parent array towards `from` (parent[from] = -1).
  std::vector<int> parents_from(int from) const;

 private:
  friend class TreeBuilder;
  std::vector<std::vector<int>> adj_;
  std::vector<std::string> taxon_of_;
  std::optional<int> root_;
  std::vector<std::string> taxa_;                // sorted
  std::map<std::string, int> taxon_vertex_;
};

// Incremental construction; build() validates the Tree invariants
// (connected, acyclic, taxa exactly on the degree-1 vertices, unique names,
// root never a taxon-bearing leaf except in the single-vertex tree).
class TreeBuilder {
 public:
  int add_vertex(std::string taxon = "");
  void add_edge(int u, int v);
  void set_root(int v) { root_ = v; }
  int vertex_count() const { return static_cast<int>(taxon_of_.size()); }
  Tree build() const;

 private:
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> taxon_of_;
  std::optional<int> root_;
};

// Tree plus a per-edge event count. Input labels are 0/1; larger values can
// only arise from display/restriction (path-sum semantics).
struct EdgeLabeledTree {
  Tree tree;
  std::map<Edge, int> labels;

  int label(const Edge& e) const;
  int label(int u, int v) const { return label(make_edge(u, v)); }
  // Sum of labels along the path between two vertices.
  long long path_sum(int u, int v) const;
};

// Checks that the labels cover exactly the edge set and are non-negative.
EdgeLabeledTree make_edge_labeled(Tree tree, std::map<Edge, int> labels);

// Tree plus a coloring of the interior vertices over an opaque alphabet.
// Leaves are implicitly uncolored (the paper's non-event).
struct DatedTree {
  Tree tree;
  std::map<int, std::string> colors;

  const std::string& color(int v) const;
  // Adjacent interior vertices carry distinct colors.
  bool discriminating() const;
};

DatedTree make_dated(Tree tree, std::map<int, std::string> colors);

// ---- operations on labeled trees ----

// Restriction of (T, lambda) to a taxa subset: leaf deletions plus
// suppression of degree-2 vertices, summing labels across suppressions so
// path sums between surviving taxa are preserved. On rooted trees the new
// root is the lca of the subset.
EdgeLabeledTree restrict_display(const EdgeLabeledTree& t, const std::vector<std::string>& sub);

// Contract one interior edge; all other labels are kept. Leaf edges are not
// contractible (TerminalEdge).
EdgeLabeledTree contract_edge(const EdgeLabeledTree& t, const Edge& e);

// Contract interior 0-edges until none remain.
EdgeLabeledTree contract_zero_interior_edges(const EdgeLabeledTree& t);

bool is_valid_taxon_token(const std::string& name);

}  // namespace phylorel
