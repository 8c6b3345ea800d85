#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phylorel/relation.hpp"
#include "phylorel/tree.hpp"

namespace phylorel {

// Arc between quotient classes. DirOne is ordered a -> b; SymOne/UnkOne
// store a < b. Class indices refer to QuotientGraph::classes.
struct QuotientArc {
  int a, b;
  PairKind kind;
  bool operator==(const QuotientArc&) const = default;
};

// The single-1 graph on the zero-relation classes, validated: Zero is an
// equivalence already closed in the records, one-relations are constant
// across class pairs, the underlying graph is a forest, and no class has two
// in-pointing DirOne arcs.
struct QuotientGraph {
  std::vector<std::string> taxa;                  // sorted
  std::vector<std::vector<std::string>> classes;  // members sorted; classes by representative
  std::vector<QuotientArc> arcs;
  std::vector<std::vector<int>> components;       // class ids per component, both sorted
  RelationMode mode = RelationMode::Symmetric;

  const std::string& rep(int cls) const { return classes[cls][0]; }
  int class_of(const std::string& taxon) const;
  bool discrete() const;
  // neighbors of a class in the underlying undirected graph
  std::vector<int> neighbors(int cls) const;
  // arc lookup on the unordered class pair; -1-kind if absent
  const QuotientArc* arc_between(int c1, int c2) const;
};

QuotientGraph build_quotient(const EventRelation& r);

// Root selector for reconstructions of directed/mixed relations.
struct RootChoice {
  enum Kind { Unrooted, Hub, Source } kind = Unrooted;
  int component = -1;  // for Source
};

struct ForestResult {
  EdgeLabeledTree tree;     // on class representatives
  bool degree2_hub = false; // exactly-two-components anomaly
};

// Algorithm 1 on one component (plus the source-priming directed variant).
// Vertices are class representatives.
EdgeLabeledTree minimally_resolved_component(const QuotientGraph& g, int comp, bool directed);

// Algorithm 2 across components; single components delegate. Directed/mixed
// quotients attach each component at its source copy and root according to
// root_choice (Hub = z_T, Source = a component's primed source).
ForestResult minimally_resolved_forest(const QuotientGraph& g, RootChoice rc = {});

// Replace class representatives by their full classes: a representative on a
// 0-edge pulls its members onto the same inner vertex; one on a 1-edge is
// replaced by an all-0 hub.
EdgeLabeledTree expand_classes(const EdgeLabeledTree& t,
                               const std::vector<std::vector<std::string>>& classes);

// Reconstruction pipeline: quotient, forest, class expansion.
struct Reconstruction {
  EdgeLabeledTree tree;  // on all taxa
  bool degree2_hub = false;
};
Reconstruction reconstruct_relation(const EventRelation& r, RootChoice rc = {});

// True iff no interior-edge contraction of t still explains r. Precondition:
// explains(t, r).
bool is_least_resolved(const EdgeLabeledTree& t, const EventRelation& r);
// Lemma 5.4.4 structural criterion (connected quotient, discrete zero
// relation): all 0-edges terminal and every inner vertex on exactly one.
bool least_resolved_structure(const EdgeLabeledTree& t);

// ---- binary enumeration (symmetric relations, discrete zero relation) ----

struct BinaryEnumeration {
  std::vector<EdgeLabeledTree> trees;          // deduped, canonical order
  bool two_components = false;                 // quotient has exactly two components
  std::vector<EdgeLabeledTree> least_resolved; // generators actually expanded
  std::vector<std::uint64_t> per_tree_counts;  // expansion size per generator
};

BinaryEnumeration enumerate_binary(const EventRelation& r, bool allow_degree2_root = false);

// Number of unrooted binary trees on k labeled leaves: (2k-5)!!.
std::uint64_t unrooted_binary_count(int k);
// The counting formula for one least resolved tree: product over inner
// vertices of degree k > 3 of t(k) (type (b)) or t(k)*2^(k-3) (type (a)).
std::uint64_t binary_count_formula(const EdgeLabeledTree& least_resolved);

// ---- mixed relations (directional information) ----

// Class ids of the central vertices of one component: vertices from which
// every arc of the component can be directed away.
std::vector<int> central_vertices(const QuotientGraph& g, int comp);

struct RootedCandidate {
  std::string descriptor;  // "zT" or "<component>:<source representative>"
  EdgeLabeledTree tree;    // rooted, on all taxa
};

struct AdmissibleResult {
  std::vector<RootedCandidate> trees;
  std::vector<int> components_without_central;  // non-empty => trees is empty
};

// All admissible rooted reconstructions of a directed/mixed relation: one
// per (component, central vertex) root choice plus the z_T root when the
// quotient is disconnected. Non-root components are oriented away from
// their smallest central vertex.
AdmissibleResult admissible_rooted_trees(const EventRelation& r);

}  // namespace phylorel
